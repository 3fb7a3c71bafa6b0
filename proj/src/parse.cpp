#include "ulpa/parse.hpp"

#include "ulpa/error.hpp"

#include <cctype>
#include <vector>

namespace ulpa {

namespace {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), line, column});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j + 1 < text.size() && text[j] == '/' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), line, column});
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Token::Kind::Punct, "->", line, column});
            advance(2);
        } else if (std::string_view("{}:;,()+-*").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), line, column});
            advance(1);
        } else {
            throw ParseError(line, column, "a token", "unexpected character '" + std::string(1, c) + "'");
        }
    }
    out.push_back({Token::Kind::End, "", line, column});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : tokens_(tokenize(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    bool at_punct(std::string_view p, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Punct && t.text == p;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, expected,
                         t.kind == Token::Kind::End ? "end of input" : "found '" + t.text + "'");
    }

    Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    void expect_punct(std::string_view p) {
        if (!at_punct(p)) fail("'" + std::string(p) + "'");
        take();
    }
    std::string expect_ident(const std::string& what = "a label") {
        if (peek().kind != Token::Kind::Ident) fail(what);
        return take().text;
    }
    void expect_keyword(std::string_view word) {
        if (peek().kind != Token::Kind::Ident || peek().text != word) fail("'" + std::string(word) + "'");
        take();
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::vector<std::string> label_list(Cursor& cur, std::string_view close) {
    std::vector<std::string> out;
    if (cur.at_punct(close)) return out;
    out.push_back(cur.expect_ident());
    while (cur.at_punct(",")) {
        cur.take();
        out.push_back(cur.expect_ident());
    }
    return out;
}

class ExprParser {
public:
    ExprParser(const Ultragraph& g, std::string_view text, const Ring& ring) : g_(g), cur_(text), ring_(ring) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        if (!cur_.at_end()) cur_.fail("an operator or end of input");
        return e;
    }

private:
    ExprPtr sum() {
        ExprPtr e = product();
        while (cur_.at_punct("+") || cur_.at_punct("-")) {
            const bool plus = cur_.take().text == "+";
            ExprPtr rhs = product();
            e = plus ? expr_add(e, rhs) : expr_sub(e, rhs);
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = unary();
        while (cur_.at_punct("*")) {
            cur_.take();
            e = expr_mul(e, unary());
        }
        return e;
    }

    ExprPtr unary() {
        if (cur_.at_punct("-")) {
            cur_.take();
            return expr_neg(unary());
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = cur_.peek();
        if (t.kind == Token::Kind::Number) {
            return expr_scalar(ring_.parse_literal(cur_.take().text));
        }
        if (cur_.at_punct("(")) {
            cur_.take();
            ExprPtr e = sum();
            cur_.expect_punct(")");
            return e;
        }
        if (t.kind == Token::Kind::Ident && t.text == "p") {
            cur_.take();
            cur_.expect_punct("(");
            VertexSet set;
            if (cur_.at_punct("{")) {
                cur_.take();
                std::vector<VertexId> members;
                for (const auto& l : label_list(cur_, "}")) members.push_back(g_.vertex(l));
                cur_.expect_punct("}");
                set = VertexSet(std::move(members));
            } else {
                set = VertexSet{g_.vertex(cur_.expect_ident("a vertex or '{'"))};
            }
            cur_.expect_punct(")");
            require_in_lattice(g_, set);
            return expr_projection(std::move(set));
        }
        if (t.kind == Token::Kind::Ident && t.text == "s") {
            cur_.take();
            bool ghost = false;
            if (cur_.at_punct("*")) {
                cur_.take();
                ghost = true;
            }
            cur_.expect_punct("(");
            const EdgeId e = g_.edge(cur_.expect_ident("an edge"));
            cur_.expect_punct(")");
            return ghost ? expr_ghost(e) : expr_edge(e);
        }
        cur_.fail("a scalar, p(...), s(...), s*(...) or '('");
    }

    const Ultragraph& g_;
    Cursor cur_;
    const Ring& ring_;
};

enum Precedence { Sum = 1, Product = 2, Prefix = 3, Atom = 4 };

Precedence precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return Sum;
        case Expr::Kind::Mul:
            return Product;
        case Expr::Kind::Neg:
            return Prefix;
        case Expr::Kind::Scalar:
            return sgn(e.value) < 0 ? Prefix : Atom;
        default:
            return Atom;
    }
}

std::string wrap(const Ultragraph& g, const Expr& e, int at_least) {
    std::string s = print_expr(g, e);
    return precedence(e) < at_least ? "(" + s + ")" : s;
}

}  // namespace

RawUltragraph parse_ultragraph_raw(std::string_view text) {
    Cursor cur(text);
    RawUltragraph raw;
    cur.expect_keyword("ultragraph");
    cur.expect_punct("{");
    cur.expect_keyword("vertices");
    cur.expect_punct(":");
    raw.vertices = label_list(cur, ";");
    cur.expect_punct(";");
    while (!cur.at_punct("}")) {
        if (cur.peek().kind != Token::Kind::Ident || cur.peek().text != "edge") cur.fail("'edge' or '}'");
        cur.take();
        RawUltragraph::Edge e;
        e.label = cur.expect_ident("an edge label");
        cur.expect_punct(":");
        e.source = cur.expect_ident("a source vertex");
        cur.expect_punct("->");
        cur.expect_punct("{");
        e.range = label_list(cur, "}");
        cur.expect_punct("}");
        cur.expect_punct(";");
        raw.edges.push_back(std::move(e));
    }
    cur.take();
    if (!cur.at_end()) cur.fail("end of input");
    return raw;
}

Ultragraph parse_ultragraph_dsl(std::string_view text) { return validate_ultragraph(parse_ultragraph_raw(text)); }

std::string print_ultragraph_dsl(const Ultragraph& g) {
    std::string out = "ultragraph {\n  vertices: ";
    const auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + g.label(vs[i]);
    out += ";\n";
    for (EdgeId e : g.edges()) {
        out += "  edge " + g.label(e) + ": " + g.label(g.source(e)) + " -> {";
        bool first = true;
        for (VertexId u : g.range(e)) {
            out += (first ? "" : ", ") + g.label(u);
            first = false;
        }
        out += "};\n";
    }
    return out + "}\n";
}

ExprPtr parse_element_expr(const Ultragraph& g, std::string_view text, const Ring& ring) {
    return ExprParser(g, text, ring).parse();
}

std::string print_expr(const Ultragraph& g, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Scalar:
            return Ring::to_string(e.value);
        case Expr::Kind::Projection: {
            if (e.set.size() == 1) return "p(" + g.label(*e.set.begin()) + ")";
            std::string out = "p({";
            bool first = true;
            for (VertexId v : e.set) {
                out += (first ? "" : ",") + g.label(v);
                first = false;
            }
            return out + "})";
        }
        case Expr::Kind::Edge:
            return "s(" + g.label(e.edge) + ")";
        case Expr::Kind::Ghost:
            return "s*(" + g.label(e.edge) + ")";
        case Expr::Kind::Add:
            return wrap(g, *e.lhs, Sum) + " + " + wrap(g, *e.rhs, Sum);
        case Expr::Kind::Sub:
            return wrap(g, *e.lhs, Sum) + " - " + wrap(g, *e.rhs, Product);
        case Expr::Kind::Mul:
            return wrap(g, *e.lhs, Product) + "*" + wrap(g, *e.rhs, Prefix);
        case Expr::Kind::Neg:
            return "-" + wrap(g, *e.lhs, Prefix);
    }
    return {};
}

}  // namespace ulpa

#include "ulpa/free_word.hpp"

#include "ulpa/error.hpp"

namespace ulpa {

FreeWord::FreeWord(std::vector<Letter> letters) {
    for (const Letter& l : letters) {
        if (!letters_.empty() && letters_.back().edge == l.edge && letters_.back().inverse != l.inverse) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }
}

FreeWord FreeWord::positive(const Path& p) {
    std::vector<Letter> letters;
    for (EdgeId e : p) letters.push_back(Letter{e, false});
    return FreeWord(std::move(letters));
}

FreeWord FreeWord::inverse() const {
    FreeWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(Letter{it->edge, !it->inverse});
    return out;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
    std::vector<Letter> joined = letters_;
    joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
    return FreeWord(std::move(joined));
}

FreeWord word_multiply(const FreeWord& u, const FreeWord& v) { return u * v; }

std::optional<WordShape> word_shape(const FreeWord& t) {
    WordShape shape;
    const auto& letters = t.letters();
    std::size_t i = 0;
    while (i < letters.size() && !letters[i].inverse) shape.a.push_back(letters[i++].edge);
    std::size_t split = i;
    for (; i < letters.size(); ++i) {
        if (!letters[i].inverse) return std::nullopt;
    }
    // b^{-1} = b_k^{-1} ... b_1^{-1}
    for (std::size_t j = letters.size(); j > split; --j) shape.b.push_back(letters[j - 1].edge);
    return shape;
}

VertexSet shape_range(const Ultragraph& g, const WordShape& shape) {
    return g.range_of(shape.a).intersect(g.range_of(shape.b));
}

bool word_admissible(const Ultragraph& g, const FreeWord& t) {
    auto shape = word_shape(t);
    if (!shape || !g.is_path(shape->a) || !g.is_path(shape->b)) return false;
    return !shape_range(g, *shape).empty();
}

WordShape admissible_shape(const Ultragraph& g, const FreeWord& t) {
    if (!word_admissible(g, t)) {
        throw Error(ErrorKind::InadmissibleWord, "word '" + to_string(g, t) + "' has empty domain");
    }
    return *word_shape(t);
}

std::string to_string(const Ultragraph& g, const FreeWord& t) {
    if (t.is_identity()) return "0";
    std::string out;
    for (std::size_t i = 0; i < t.letters().size(); ++i) {
        if (i) out += ' ';
        out += g.label(t.letters()[i].edge);
        if (t.letters()[i].inverse) out += "^-1";
    }
    return out;
}

}  // namespace ulpa

#include "ulpa/reduction.hpp"

#include "ulpa/error.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>

namespace ulpa {

GradedElement factor_element(const SkewRing& k, const Factor& f) {
    switch (f.kind) {
        case Factor::Kind::Edge:
            return phi_edge(k, f.edge);
        case Factor::Kind::Ghost:
            return phi_ghost(k, f.edge);
        case Factor::Kind::Vertex:
            return phi_projection(k, VertexSet{f.vertex});
    }
    throw std::logic_error("bad factor kind");
}

GradedElement sequence_element(const SkewRing& k, const FactorSeq& seq) {
    GradedElement out = phi_unit(k);
    for (const auto& f : seq) out = k.multiply(out, factor_element(k, f));
    return out;
}

GradedElement form_element(const SkewRing& k, const ReducedForm& form) {
    if (const auto* sp = std::get_if<ScalarProjection>(&form)) {
        return k.scale(sp->lambda, phi_projection(k, sp->set));
    }
    const auto& cp = std::get<CyclePowers>(form);
    GradedElement base = phi_unit(k);
    for (EdgeId e : cp.cycle) base = k.multiply(base, phi_edge(k, e));
    GradedElement out;
    GradedElement power = phi_unit(k);
    int exponent = 0;
    for (const auto& [m, lambda] : cp.coeffs) {
        while (exponent < m) {
            power = k.multiply(power, base);
            ++exponent;
        }
        out = k.add(out, k.scale(lambda, power));
    }
    return out;
}

GradedElement apply_outcome(const SkewRing& k, const ReductionOutcome& r, const GradedElement& x) {
    return k.multiply(k.multiply(sequence_element(k, r.mu), x), sequence_element(k, r.nu));
}

VertexId find_vertex_right_support(const SkewRing& k, const GradedElement& x) {
    if (k.is_zero(x)) throw Error(ErrorKind::ZeroElement, "element is zero");
    for (VertexId v : k.graph().vertices()) {
        if (!k.is_zero(k.multiply(x, phi_projection(k, VertexSet{v})))) return v;
    }
    throw std::logic_error("nonzero element annihilated by every vertex projection");
}

GhostStrip strip_ghost_edges(const SkewRing& k, const GradedElement& x) {
    GhostStrip out{{}, k.canonical(x)};
    if (out.xy.empty()) throw Error(ErrorKind::ZeroElement, "element is zero");
    for (;;) {
        std::optional<EdgeId> pick;
        std::size_t longest = 0;
        for (const auto& [t, f] : out.xy) {
            const WordShape shape = *word_shape(t);
            if (shape.b.size() > longest) {
                longest = shape.b.size();
                pick = shape.b.front();
            }
        }
        if (!pick) return out;
        out.xy = k.multiply(out.xy, phi_edge(k, *pick));
        out.y.push_back(*pick);
        if (out.xy.empty()) throw std::logic_error("ghost stripping reached zero");
    }
}

namespace {

std::optional<Path> positive_path(const FreeWord& t) {
    Path p;
    for (const auto& l : t.letters()) {
        if (l.inverse) return std::nullopt;
        p.push_back(l.edge);
    }
    return p;
}

std::optional<ReducedForm> recognize(const SkewRing& k, const GradedElement& y) {
    const Ultragraph& g = k.graph();
    if (y.empty()) return std::nullopt;
    if (y.size() == 1 && y.begin()->first.is_identity()) {
        const DElement& f = y.begin()->second;
        const Scalar& lambda = f.begin()->second;
        std::vector<VertexId> set;
        for (const auto& [c, value] : f) {
            if (c.depth() != 0 || value != lambda) return std::nullopt;
            set.push_back(c.next);
        }
        return ScalarProjection{lambda, VertexSet(std::move(set))};
    }
    std::optional<Path> shortest;
    for (const auto& [t, f] : y) {
        auto p = positive_path(t);
        if (!p || p->empty()) return std::nullopt;
        if (!shortest || p->size() < shortest->size()) shortest = p;
    }
    const Path d = primitive_root(*shortest);
    if (!is_cycle(g, d) || !exits_of_closed_path(g, d).empty()) return std::nullopt;
    CyclePowers cp{d, {}};
    const VertexId base = g.source(d.front());
    for (const auto& [t, f] : y) {
        const Path p = *positive_path(t);
        if (p.size() % d.size() != 0) return std::nullopt;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] != d[i % d.size()]) return std::nullopt;
        }
        if (f.size() != 1 || f.begin()->first != Cylinder{p, base}) return std::nullopt;
        cp.coeffs.emplace(static_cast<int>(p.size() / d.size()), f.begin()->second);
    }
    return cp;
}

class Reducer {
public:
    Reducer(const SkewRing& k, const GradedElement& x) : k_(k), g_(k.graph()), y_(k.canonical(x)) {}

    ReductionOutcome run() {
        if (y_.empty()) throw Error(ErrorKind::ZeroElement, "element is zero");
        for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
            if (y_.empty()) throw std::logic_error("reduction step produced zero");
            if (auto form = recognize(k_, y_)) return {{mu_.begin(), mu_.end()}, nu_, *form};
            step();
        }
        throw std::logic_error("reduction did not terminate");
    }

private:
    static constexpr int kMaxIterations = 10000;

    void left(const Factor& f) {
        y_ = k_.multiply(factor_element(k_, f), y_);
        mu_.push_front(f);
    }

    void right(const Factor& f) {
        y_ = k_.multiply(y_, factor_element(k_, f));
        nu_.push_back(f);
    }

    void left_adjoint(const Path& p) {
        for (EdgeId e : p) left(Factor::of_ghost(e));
    }

    // Largest |b| + |p| over cylinders (a p, u) in components a b^{-1}, with
    // the first edge of b p.
    std::optional<EdgeId> ghost_edge() const {
        std::size_t best = 0;
        std::optional<EdgeId> pick;
        for (const auto& [t, f] : y_) {
            const WordShape shape = *word_shape(t);
            for (const auto& [c, value] : f) {
                const std::size_t tail = c.depth() - shape.a.size();
                const std::size_t ghost = shape.b.size() + tail;
                if (ghost > best) {
                    best = ghost;
                    pick = shape.b.empty() ? c.prefix[shape.a.size()] : shape.b.front();
                }
            }
        }
        return pick;
    }

    void step() {
        if (auto e = ghost_edge()) {
            right(Factor::of_edge(*e));
            return;
        }
        const VertexId v = find_vertex_right_support(k_, y_);
        const GradedElement restricted = k_.multiply(y_, phi_projection(k_, VertexSet{v}));
        if (!k_.equal(restricted, y_)) {
            right(Factor::of_vertex(v));
            return;
        }
        // Now y = Σ λ_a s_a p_v over distinct paths a with v ∈ r(a).
        std::vector<Path> words;
        for (const auto& [t, f] : y_) words.push_back(*positive_path(t));
        std::sort(words.begin(), words.end(), [](const Path& p, const Path& q) {
            return p.size() != q.size() ? p.size() < q.size() : p < q;
        });
        if (words.size() == 1 || !words.front().empty()) {
            left_adjoint(words.front());
            return;
        }
        for (std::size_t i = 1; i < words.size(); ++i) {
            if (g_.source(words[i].front()) != v) {
                left(Factor::of_vertex(v));
                return;
            }
        }
        const Path c = words[1];
        for (std::size_t i = 2; i < words.size(); ++i) {
            if (!std::equal(c.begin(), c.end(), words[i].begin())) {
                left_adjoint(c);
                return;
            }
        }
        const auto exits = exits_of_closed_path(g_, c);
        if (exits.empty()) {
            const Path d = primitive_root(c);
            for (std::size_t i = d.size(); i-- > 0;) left(Factor::of_edge(d[i]));
            return;
        }
        compress_at_exit(c, v, exits);
    }

    // Tries μ' y ν' with μ' = lefts applied in order; commits when the
    // result is a nonzero scalar projection.
    bool attempt(const std::vector<Factor>& lefts, const std::vector<Factor>& rights) {
        GradedElement z = y_;
        for (const auto& f : lefts) z = k_.multiply(factor_element(k_, f), z);
        for (const auto& f : rights) z = k_.multiply(z, factor_element(k_, f));
        auto form = recognize(k_, z);
        if (z.empty() || !form || !std::holds_alternative<ScalarProjection>(*form)) return false;
        for (const auto& f : lefts) mu_.push_front(f);
        for (const auto& f : rights) nu_.push_back(f);
        y_ = std::move(z);
        return true;
    }

    bool conjugate(const Path& gamma, std::optional<VertexId> sink) {
        std::vector<Factor> lefts;
        std::vector<Factor> rights;
        for (EdgeId e : gamma) {
            lefts.push_back(Factor::of_ghost(e));
            rights.push_back(Factor::of_edge(e));
        }
        if (sink) lefts.push_back(Factor::of_vertex(*sink));
        return attempt(lefts, rights);
    }

    void compress_at_exit(const Path& c, VertexId v, const std::vector<Exit>& exits) {
        for (const auto& exit : exits) {
            const Path head(c.begin(), c.begin() + exit.position);
            if (exit.kind == Exit::Kind::Sink) {
                if (conjugate(head, exit.sink)) return;
                continue;
            }
            Path gamma;
            if (static_cast<std::size_t>(exit.position) == c.size() && g_.source(exit.edge) == v) {
                gamma = {exit.edge};
            } else {
                gamma = head;
                gamma.push_back(exit.edge);
            }
            if (conjugate(gamma, std::nullopt)) return;
        }
        // Breadth-first search over conjugating paths from v.
        std::deque<Path> queue;
        for (EdgeId e : g_.emitted(v)) queue.push_back({e});
        const auto sink_set = sinks(g_);
        while (!queue.empty()) {
            Path gamma = std::move(queue.front());
            queue.pop_front();
            if (conjugate(gamma, std::nullopt)) return;
            for (VertexId w : sink_set) {
                if (conjugate(gamma, w)) return;
            }
            if (gamma.size() > c.size()) continue;
            for (VertexId u : g_.range(gamma.back())) {
                for (EdgeId e : g_.emitted(u)) {
                    Path next = gamma;
                    next.push_back(e);
                    queue.push_back(std::move(next));
                }
            }
        }
        throw std::logic_error("no exit construction reached a scalar projection");
    }

    const SkewRing& k_;
    const Ultragraph& g_;
    GradedElement y_;
    std::deque<Factor> mu_;
    FactorSeq nu_;
};

}  // namespace

ReductionOutcome reduce(const SkewRing& k, const GradedElement& x) {
    ReductionOutcome out = Reducer(k, x).run();
    const GradedElement reached = apply_outcome(k, out, x);
    if (k.is_zero(reached) || !k.equal(reached, form_element(k, out.form))) {
        throw std::logic_error("reduction outcome failed verification");
    }
    if (const auto* cp = std::get_if<CyclePowers>(&out.form)) {
        if (!exits_of_closed_path(k.graph(), cp->cycle).empty()) throw std::logic_error("reported cycle has an exit");
    }
    return out;
}

SemiprimeWitness semiprime_square_witness(const SkewRing& k, const GradedElement& x) {
    if (k.ring().has_zero_divisors()) {
        throw Error(ErrorKind::RingHasZeroDivisors, "ring " + k.ring().name() + " has zero divisors");
    }
    SemiprimeWitness out{reduce(k, x), {}, {}};
    out.w = apply_outcome(k, out.outcome, x);
    out.square = k.multiply(out.w, out.w);
    if (k.is_zero(out.square)) throw std::logic_error("square of the reduced element vanished");
    return out;
}

std::string to_string(const Ultragraph& g, const Factor& f) {
    switch (f.kind) {
        case Factor::Kind::Edge:
            return "s(" + g.label(f.edge) + ")";
        case Factor::Kind::Ghost:
            return "s*(" + g.label(f.edge) + ")";
        case Factor::Kind::Vertex:
            return "p(" + g.label(f.vertex) + ")";
    }
    return {};
}

}  // namespace ulpa

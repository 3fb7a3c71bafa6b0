#include "ulpa/sampling.hpp"

#include <stdexcept>

namespace ulpa {

Sampler::Sampler(const Ultragraph& g, std::uint64_t seed, SampleOptions options)
    : g_(g), rng_(seed), options_(options) {}

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Path Sampler::random_path(int max_length) {
    Path p;
    const int length = uniform(0, max_length);
    if (length == 0 || g_.edge_count() == 0) return p;
    const auto edges = g_.edges();
    p.push_back(edges[static_cast<std::size_t>(uniform(0, static_cast<int>(edges.size()) - 1))]);
    while (static_cast<int>(p.size()) < length) {
        std::vector<EdgeId> next;
        for (VertexId u : g_.range(p.back())) {
            for (EdgeId e : g_.emitted(u)) next.push_back(e);
        }
        if (next.empty()) break;
        p.push_back(next[static_cast<std::size_t>(uniform(0, static_cast<int>(next.size()) - 1))]);
    }
    return p;
}

Scalar Sampler::random_coefficient() {
    const int b = options_.coefficient_bound;
    int value = uniform(-b, b - 1);
    if (value >= 0) ++value;
    return Scalar(value);
}

VertexSet Sampler::random_nonempty_subset(const VertexSet& from) {
    const auto& members = from.members();
    for (;;) {
        std::vector<VertexId> picked;
        for (VertexId v : members) {
            if (uniform(0, 1)) picked.push_back(v);
        }
        if (!picked.empty() || members.empty()) return VertexSet(std::move(picked));
    }
}

Monomial Sampler::random_monomial() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Monomial m{random_path(options_.max_path_length), {}, random_path(options_.max_path_length)};
        const VertexSet live = g_.range_of(m.a).intersect(g_.range_of(m.b));
        if (live.empty()) continue;
        // Keep some vertices outside r(a) ∩ r(b) so canonicalization is exercised.
        m.set = random_nonempty_subset(live).unite(random_nonempty_subset(g_.all_vertices()));
        return m;
    }
    throw std::runtime_error("no monomial with a common range found");
}

ExprPtr Sampler::random_element() {
    const int terms = uniform(1, options_.max_terms);
    ExprPtr sum;
    for (int i = 0; i < terms; ++i) {
        ExprPtr term = monomial_expr(g_, random_monomial(), random_coefficient());
        sum = sum ? expr_add(sum, term) : term;
    }
    return sum;
}

ExprPtr Sampler::random_expression(int depth) {
    const int choice = uniform(0, depth <= 0 ? 3 : 6);
    const auto edges = g_.edges();
    auto random_edge = [&] { return edges[static_cast<std::size_t>(uniform(0, static_cast<int>(edges.size()) - 1))]; };
    switch (choice) {
        case 0:
            return expr_projection(random_nonempty_subset(g_.all_vertices()));
        case 1:
            return edges.empty() ? expr_scalar(random_coefficient()) : expr_edge(random_edge());
        case 2:
            return edges.empty() ? expr_scalar(random_coefficient()) : expr_ghost(random_edge());
        case 3:
            return expr_scalar(random_coefficient());
        case 4:
            return expr_add(random_expression(depth - 1), random_expression(depth - 1));
        case 5:
            return expr_sub(random_expression(depth - 1), random_expression(depth - 1));
        default:
            return expr_mul(random_expression(depth - 1), random_expression(depth - 1));
    }
}

std::vector<ExprPtr> random_nonzero_corpus(const SkewRing& k, int count, std::uint64_t seed, SampleOptions options) {
    Sampler sampler(k.graph(), seed, options);
    std::vector<ExprPtr> out;
    while (static_cast<int>(out.size()) < count) {
        ExprPtr e = sampler.random_element();
        if (!k.is_zero(eval_expression(k, *e))) out.push_back(std::move(e));
    }
    return out;
}

}  // namespace ulpa

#ifndef ULPA_SAMPLING_HPP
#define ULPA_SAMPLING_HPP

#include "ulpa/leavitt.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ulpa {

struct SampleOptions {
    int max_terms = 4;
    int max_path_length = 3;
    int coefficient_bound = 3;  // coefficients drawn from {-b..b} \ {0}
};

// Deterministic random elements for property tests and corpus runs.
class Sampler {
public:
    Sampler(const Ultragraph& g, std::uint64_t seed, SampleOptions options = {});

    // A random walk of length up to max_length; shorter when it hits a sink.
    Path random_path(int max_length);
    Scalar random_coefficient();
    VertexSet random_nonempty_subset(const VertexSet& from);
    // A monomial s_a p_A s_b^* with A ∩ r(a) ∩ r(b) ≠ ∅.
    Monomial random_monomial();
    // Σ λ_i s_{a_i} p_{A_i} s_{b_i}^*.
    ExprPtr random_element();
    // Nested sums and products of generators and small scalars.
    ExprPtr random_expression(int depth);

private:
    const Ultragraph& g_;
    std::mt19937_64 rng_;
    SampleOptions options_;

    int uniform(int lo, int hi);
};

// `count` random elements whose Φ-image is nonzero.
std::vector<ExprPtr> random_nonzero_corpus(const SkewRing& k, int count, std::uint64_t seed, SampleOptions options = {});

}  // namespace ulpa

#endif  // ULPA_SAMPLING_HPP

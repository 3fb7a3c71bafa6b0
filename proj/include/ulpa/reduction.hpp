#ifndef ULPA_REDUCTION_HPP
#define ULPA_REDUCTION_HPP

#include "ulpa/leavitt.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ulpa {

// s(e), s*(e) or p(v).
struct Factor {
    enum class Kind { Edge, Ghost, Vertex };
    Kind kind;
    EdgeId edge;
    VertexId vertex;

    static Factor of_edge(EdgeId e) { return {Kind::Edge, e, {}}; }
    static Factor of_ghost(EdgeId e) { return {Kind::Ghost, e, {}}; }
    static Factor of_vertex(VertexId v) { return {Kind::Vertex, {}, v}; }
    bool operator==(const Factor&) const = default;
};
using FactorSeq = std::vector<Factor>;

struct ScalarProjection {
    Scalar lambda;
    VertexSet set;
};

// Σ λ_m s_c^m over positive exponents m.
struct CyclePowers {
    Path cycle;
    std::map<int, Scalar> coeffs;
};

using ReducedForm = std::variant<ScalarProjection, CyclePowers>;

// μ x ν = form, with μ = mu[0] mu[1] ... and ν = nu[0] nu[1] ...
struct ReductionOutcome {
    FactorSeq mu;
    FactorSeq nu;
    ReducedForm form;
};

GradedElement factor_element(const SkewRing& k, const Factor& f);
// The product of the factors; the unit for an empty sequence.
GradedElement sequence_element(const SkewRing& k, const FactorSeq& seq);
GradedElement form_element(const SkewRing& k, const ReducedForm& form);
// μ·x·ν.
GradedElement apply_outcome(const SkewRing& k, const ReductionOutcome& r, const GradedElement& x);

// First vertex v in declaration order with x p_v ≠ 0. Throws ZeroElement.
VertexId find_vertex_right_support(const SkewRing& k, const GradedElement& x);

struct GhostStrip {
    Path y;
    GradedElement xy;
};

// Right-multiplies by s_e until every component word is a positive path.
// Throws ZeroElement.
GhostStrip strip_ghost_edges(const SkewRing& k, const GradedElement& x);

// Throws ZeroElement. The outcome is checked against the oracle before it
// is returned.
ReductionOutcome reduce(const SkewRing& k, const GradedElement& x);

struct SemiprimeWitness {
    ReductionOutcome outcome;
    GradedElement w;       // μ x ν
    GradedElement square;  // w·w, nonzero
};

// Throws ZeroElement, RingHasZeroDivisors.
SemiprimeWitness semiprime_square_witness(const SkewRing& k, const GradedElement& x);

std::string to_string(const Ultragraph& g, const Factor& f);

}  // namespace ulpa

#endif  // ULPA_REDUCTION_HPP

#ifndef ULPA_SKEW_ALGEBRA_HPP
#define ULPA_SKEW_ALGEBRA_HPP

#include "ulpa/free_word.hpp"
#include "ulpa/path_space.hpp"
#include "ulpa/ring.hpp"
#include "ulpa/ultragraph.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ulpa {

// A finite combination of cylinder indicators. Members need not be disjoint
// until canonicalized.
using DElement = std::map<Cylinder, Scalar>;

// Σ f_t δ_t over admissible words t.
using GradedElement = std::map<FreeWord, DElement>;

// The graded ring D ⋊_β F for one ultragraph and one coefficient ring.
// Holds a reference to the graph, which must outlive it.
class SkewRing {
public:
    SkewRing(const Ultragraph& g, Ring ring) : g_(&g), ring_(std::move(ring)) {}

    const Ultragraph& graph() const { return *g_; }
    const Ring& ring() const { return ring_; }

    // Disjoint, zero free, and coarsest above depth min_depth.
    DElement d_canonical(const DElement& f, std::size_t min_depth = 0) const;
    DElement d_add(const DElement& f, const DElement& h) const;
    DElement d_scale(const Scalar& lambda, const DElement& f) const;
    DElement d_multiply(const DElement& f, const DElement& h) const;
    bool d_is_zero(const DElement& f) const;
    DElement indicator(const SetExpr& s) const;

    // β_c(f) = f ∘ θ_{c^{-1}}. Throws InadmissibleWord.
    DElement beta_apply(const FreeWord& c, const DElement& f) const;

    GradedElement monomial(const FreeWord& t, DElement f) const;
    GradedElement add(const GradedElement& x, const GradedElement& y) const;
    GradedElement sub(const GradedElement& x, const GradedElement& y) const;
    GradedElement neg(const GradedElement& x) const;
    GradedElement scale(const Scalar& lambda, const GradedElement& x) const;
    GradedElement multiply(const GradedElement& x, const GradedElement& y) const;

    // Every component canonical with min_depth |a| for the word a b^{-1};
    // two elements are equal exactly when their canonical forms coincide.
    GradedElement canonical(const GradedElement& x) const;
    bool is_zero(const GradedElement& x) const;
    bool equal(const GradedElement& x, const GradedElement& y) const;

    // True when every component sits inside D_t for its word t.
    bool supported_in_ideals(const GradedElement& x) const;

    std::string to_string(const DElement& f, const FreeWord& t) const;
    std::string to_string(const GradedElement& x) const;

private:
    const Ultragraph* g_;
    Ring ring_;
};

DElement beta_apply(const SkewRing& k, const FreeWord& c, const DElement& f);
GradedElement graded_multiply(const SkewRing& k, const GradedElement& x, const GradedElement& y);
bool graded_is_zero(const SkewRing& k, const GradedElement& x);
std::vector<std::pair<FreeWord, DElement>> homogeneous_components(const SkewRing& k, const GradedElement& x);

}  // namespace ulpa

#endif  // ULPA_SKEW_ALGEBRA_HPP

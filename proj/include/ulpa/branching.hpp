#ifndef ULPA_BRANCHING_HPP
#define ULPA_BRANCHING_HPP

#include "ulpa/leavitt.hpp"
#include "ulpa/region.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ulpa {

// R_e, D_A and f_e : D_{r(e)} -> R_e over the carrier [0,1) × labels.
// D holds every singleton {v}; other sets are optional and otherwise taken
// to be the union of their singletons.
struct BranchingSystem {
    std::map<EdgeId, Region> R;
    std::map<VertexSet, Region> D;
    std::map<EdgeId, PiecewiseMap> f;

    Region d_region(const VertexSet& a) const;
};

BranchingSystem build_interval_system(const Ultragraph& g);

struct AxiomCheck {
    std::string axiom;  // "well-formed", "1" ... "5"
    bool passed = false;
    std::string detail;
};

struct BranchingReport {
    std::vector<AxiomCheck> checks;
    bool nonempty_d = false;  // D_A ≠ ∅ for every nonempty A
    bool valid() const;
};

BranchingReport validate_branching(const Ultragraph& g, const BranchingSystem& bs);

using FinSuppVector = std::map<Point, Scalar>;

// The induced representation on finitely supported functions on the carrier.
// Throws InvalidSystem when the system fails an axiom.
class Representation {
public:
    Representation(const Ultragraph& g, const BranchingSystem& bs, Ring ring = Ring::rationals());

    FinSuppVector apply(const Expr& expr, const FinSuppVector& phi) const;
    const Ring& ring() const { return ring_; }

private:
    FinSuppVector project(const Region& region, const FinSuppVector& phi) const;
    FinSuppVector push(EdgeId e, const FinSuppVector& phi) const;
    FinSuppVector pull(EdgeId e, const FinSuppVector& phi) const;
    FinSuppVector combine(const FinSuppVector& a, const FinSuppVector& b, bool subtract) const;

    const Ultragraph& g_;
    BranchingSystem bs_;
    Ring ring_;
    Region unit_region_;
};

FinSuppVector rep_apply(const Ultragraph& g, const BranchingSystem& bs, const Expr& expr, const FinSuppVector& phi,
                        const Ring& ring = Ring::rationals());

// Replaces f along every exitless cycle by the rotation x ↦ (x + 1/q) mod 1.
BranchingSystem build_rotation_variant(const Ultragraph& g, const BranchingSystem& bs, int q);

// f_{c_1} ∘ ... ∘ f_{c_n}.
PiecewiseMap path_map(const BranchingSystem& bs, const Path& c);

struct CycleVerdict {
    Path cycle;
    std::optional<Point> witness;  // f_c^n(z_0) ≠ z_0 for every n ≤ n_max
    std::optional<int> j0;         // f_c^{j0} is the identity on D_{r(c)}
};

struct FaithfulnessVerdict {
    int n_max = 0;
    std::vector<CycleVerdict> cycles;  // exitless cycles only
    bool faithful() const;
    std::optional<CycleVerdict> failing() const;
};

// Throws InvalidSystem, InvalidArgument for n_max < 1.
FaithfulnessVerdict check_faithfulness_criterion(const Ultragraph& g, const BranchingSystem& bs, int n_max);

// Interval endpoints and midpoints, closed under every f_e and f_e^{-1} up to
// `depth` applications.
std::vector<Point> probe_points(const Ultragraph& g, const BranchingSystem& bs, int depth = 6);

struct KernelWitness {
    ExprPtr expr;  // s_c^{j0} - p_{s(c)}
    Path cycle;
    int j0 = 0;
    bool algebra_nonzero = false;
    bool representation_zero = false;
    std::size_t probes = 0;
};

std::optional<KernelWitness> kernel_witness(const Ultragraph& g, const BranchingSystem& bs, int n_max = 64);

// A branching system on a finite carrier of named points.
struct DiscreteSystem {
    std::vector<std::string> points;
    std::map<EdgeId, std::set<int>> R;
    std::map<VertexId, std::set<int>> D;
    std::map<EdgeId, std::map<int, int>> f;  // D_{r(e)} -> R_e

    std::set<int> d_set(const VertexSet& a) const;
};

BranchingReport validate_discrete(const Ultragraph& g, const DiscreteSystem& ds);

// The closure of `seeds` under every f_e and f_e^{-1}, as a discrete system.
// Throws InvalidArgument when the closure exceeds `cap` points.
DiscreteSystem restrict_to_points(const Ultragraph& g, const BranchingSystem& bs, const std::vector<Point>& seeds,
                                  std::size_t cap = 10000);

using DiscreteVector = std::map<int, Scalar>;

// The induced representation of a discrete system on point indices.
DiscreteVector discrete_apply(const Ultragraph& g, const DiscreteSystem& ds, const Ring& ring, const Expr& expr,
                              const DiscreteVector& phi);

}  // namespace ulpa

#endif  // ULPA_BRANCHING_HPP

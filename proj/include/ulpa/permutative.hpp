#ifndef ULPA_PERMUTATIVE_HPP
#define ULPA_PERMUTATIVE_HPP

#include "ulpa/branching.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ulpa {

// Bases of the free module on B: B_v, B_e ⊆ B and bijections B_{r(e)} -> B_e.
struct PermutativeData {
    std::vector<std::string> B;
    std::map<VertexId, std::set<int>> B_v;
    std::map<EdgeId, std::set<int>> B_e;
    std::map<EdgeId, std::map<int, int>> edge_maps;
};

// Throws InvalidSystem for malformed bases and B2BViolation when an edge map
// is not a bijection B_{r(e)} -> B_e.
void validate_permutative(const Ultragraph& g, const PermutativeData& pd);

// B_A = ⋃_{v∈A} B_v. Throws SetNotInLattice.
std::set<int> basis_for_generalized_vertex(const Ultragraph& g, const PermutativeData& pd, const VertexSet& a);

VertexSet isolated_vertices(const Ultragraph& g);

struct ExtremeVertex {
    enum class Kind { Initial, Final };
    VertexSet set;
    EdgeId edge;
    Kind kind;
};

std::vector<ExtremeVertex> extreme_vertices(const Ultragraph& g);

struct StratumLevel {
    std::vector<ExtremeVertex> X;
    std::set<EdgeId> Y;
    VertexSet X_bar;
    VertexSet I;
};

struct Stratification {
    VertexSet I0;
    std::vector<StratumLevel> levels;  // levels[n-1] holds X_n, Y_n, X̄_n, I_n
    bool terminated = false;
    bool covered = false;
};

Stratification stratify(const Ultragraph& g);

struct EsteaquiReport {
    bool holds = false;
    Stratification stratification;
};

EsteaquiReport esteaqui_hypothesis(const Ultragraph& g);

// The canonical δ-basis of a discrete system: B = points, B_v = D_v, B_e = R_e.
PermutativeData pd_from_discrete(const Ultragraph& g, const DiscreteSystem& ds);

// φ(gen)(h_x) for a generator node: the image basis index, or none for zero.
std::optional<int> permutative_generator_apply(const Ultragraph& g, const PermutativeData& pd, const Expr& gen, int x);

struct PermutativeTransform {
    DiscreteSystem system;
    std::vector<int> T;  // δ_x ↦ h_{T[x]}
    BranchingReport report;
    std::size_t checks = 0;
    bool intertwines = false;
};

// Throws B2BViolation, InvalidSystem.
PermutativeTransform permutative_to_branching(const Ultragraph& g, const PermutativeData& pd);

}  // namespace ulpa

#endif  // ULPA_PERMUTATIVE_HPP

#ifndef ULPA_LEAVITT_HPP
#define ULPA_LEAVITT_HPP

#include "ulpa/skew_algebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ulpa {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Generator expressions with names already resolved against a graph.
// A bare scalar λ stands for λ·p_{G^0}, the unit of the algebra.
struct Expr {
    enum class Kind { Scalar, Projection, Edge, Ghost, Add, Sub, Mul, Neg };

    Kind kind;
    Scalar value;       // Scalar
    VertexSet set;      // Projection
    EdgeId edge;        // Edge, Ghost
    ExprPtr lhs, rhs;   // Add, Sub, Mul use both; Neg uses lhs
};

ExprPtr expr_scalar(Scalar value);
ExprPtr expr_projection(VertexSet set);
ExprPtr expr_edge(EdgeId e);
ExprPtr expr_ghost(EdgeId e);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_neg(ExprPtr a);

// s_{e_1} ... s_{e_n}, or p_{G^0} for the empty path.
ExprPtr expr_path(const Ultragraph& g, const Path& p);
// s_{e_n}^* ... s_{e_1}^*, the adjoint of expr_path.
ExprPtr expr_path_adjoint(const Ultragraph& g, const Path& p);

// Φ on a single generator node. Throws SetNotInLattice.
GradedElement phi_generator(const SkewRing& k, const Expr& gen);
GradedElement phi_projection(const SkewRing& k, const VertexSet& a);
GradedElement phi_edge(const SkewRing& k, EdgeId e);
GradedElement phi_ghost(const SkewRing& k, EdgeId e);
GradedElement phi_unit(const SkewRing& k);

GradedElement eval_expression(const SkewRing& k, const Expr& expr);

// s_a p_A s_b^*.
struct Monomial {
    Path a;
    VertexSet set;
    Path b;
};

// λ·1_{X_a}1_{X_{aA}}1_{X_{ab^{-1}}}δ_{ab^{-1}}; zero when A ∩ r(a) ∩ r(b) = ∅.
// Throws InvalidPath.
GradedElement monomial_image(const SkewRing& k, const Monomial& m, const Scalar& lambda);
ExprPtr monomial_expr(const Ultragraph& g, const Monomial& m, const Scalar& lambda);

struct RelationCheck {
    std::string relation;  // "1", "2", "3" or "4"
    std::string instance;
    bool passed = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_passed() const;
    std::optional<RelationCheck> first_failure() const;
};

RelationReport verify_relations(const SkewRing& k);

}  // namespace ulpa

#endif  // ULPA_LEAVITT_HPP

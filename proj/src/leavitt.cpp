#include "ulpa/leavitt.hpp"

#include "ulpa/error.hpp"

namespace ulpa {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind kind, ExprPtr a, ExprPtr b) {
    Expr e{kind, {}, {}, {}, std::move(a), std::move(b)};
    return make(std::move(e));
}

}  // namespace

ExprPtr expr_scalar(Scalar value) { return make(Expr{Expr::Kind::Scalar, std::move(value), {}, {}, {}, {}}); }
ExprPtr expr_projection(VertexSet set) { return make(Expr{Expr::Kind::Projection, {}, std::move(set), {}, {}, {}}); }
ExprPtr expr_edge(EdgeId e) { return make(Expr{Expr::Kind::Edge, {}, {}, e, {}, {}}); }
ExprPtr expr_ghost(EdgeId e) { return make(Expr{Expr::Kind::Ghost, {}, {}, e, {}, {}}); }
ExprPtr expr_add(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Add, std::move(a), std::move(b)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Sub, std::move(a), std::move(b)); }
ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Mul, std::move(a), std::move(b)); }
ExprPtr expr_neg(ExprPtr a) { return binary(Expr::Kind::Neg, std::move(a), nullptr); }

ExprPtr expr_path(const Ultragraph& g, const Path& p) {
    if (p.empty()) return expr_projection(g.all_vertices());
    ExprPtr out = expr_edge(p.front());
    for (std::size_t i = 1; i < p.size(); ++i) out = expr_mul(out, expr_edge(p[i]));
    return out;
}

ExprPtr expr_path_adjoint(const Ultragraph& g, const Path& p) {
    if (p.empty()) return expr_projection(g.all_vertices());
    ExprPtr out = expr_ghost(p.back());
    for (std::size_t i = p.size() - 1; i-- > 0;) out = expr_mul(out, expr_ghost(p[i]));
    return out;
}

GradedElement phi_projection(const SkewRing& k, const VertexSet& a) {
    require_in_lattice(k.graph(), a);
    return k.monomial(FreeWord{}, k.indicator(cylinder_from(k.graph(), {}, a)));
}

GradedElement phi_edge(const SkewRing& k, EdgeId e) {
    const FreeWord t = FreeWord::positive({e});
    return k.monomial(t, k.indicator(x_set(k.graph(), t)));
}

GradedElement phi_ghost(const SkewRing& k, EdgeId e) {
    const FreeWord t = FreeWord::positive({e}).inverse();
    return k.monomial(t, k.indicator(x_set(k.graph(), t)));
}

GradedElement phi_unit(const SkewRing& k) { return phi_projection(k, k.graph().all_vertices()); }

GradedElement phi_generator(const SkewRing& k, const Expr& gen) {
    switch (gen.kind) {
        case Expr::Kind::Projection:
            return phi_projection(k, gen.set);
        case Expr::Kind::Edge:
            return phi_edge(k, gen.edge);
        case Expr::Kind::Ghost:
            return phi_ghost(k, gen.edge);
        default:
            throw Error(ErrorKind::InvalidArgument, "not a generator");
    }
}

GradedElement eval_expression(const SkewRing& k, const Expr& expr) {
    switch (expr.kind) {
        case Expr::Kind::Scalar:
            return k.scale(expr.value, phi_unit(k));
        case Expr::Kind::Projection:
        case Expr::Kind::Edge:
        case Expr::Kind::Ghost:
            return phi_generator(k, expr);
        case Expr::Kind::Add:
            return k.add(eval_expression(k, *expr.lhs), eval_expression(k, *expr.rhs));
        case Expr::Kind::Sub:
            return k.sub(eval_expression(k, *expr.lhs), eval_expression(k, *expr.rhs));
        case Expr::Kind::Neg:
            return k.neg(eval_expression(k, *expr.lhs));
        case Expr::Kind::Mul:
            if (expr.lhs->kind == Expr::Kind::Scalar) return k.scale(expr.lhs->value, eval_expression(k, *expr.rhs));
            if (expr.rhs->kind == Expr::Kind::Scalar) return k.scale(expr.rhs->value, eval_expression(k, *expr.lhs));
            return k.multiply(eval_expression(k, *expr.lhs), eval_expression(k, *expr.rhs));
    }
    throw Error(ErrorKind::InvalidArgument, "malformed expression");
}

GradedElement monomial_image(const SkewRing& k, const Monomial& m, const Scalar& lambda) {
    const Ultragraph& g = k.graph();
    for (const Path* p : {&m.a, &m.b}) {
        if (!g.is_path(*p)) throw Error(ErrorKind::InvalidPath, "'" + path_to_string(g, *p) + "' is not a path");
    }
    require_in_lattice(g, m.set);
    const VertexSet live = m.set.intersect(g.range_of(m.a)).intersect(g.range_of(m.b));
    if (live.empty()) return {};
    const FreeWord t = FreeWord::positive(m.a) * FreeWord::positive(m.b).inverse();
    DElement f = k.d_multiply(k.indicator(cylinder_from(g, m.a, g.all_vertices())),
                              k.indicator(cylinder_from(g, m.a, live)));
    f = k.d_multiply(f, k.indicator(x_set(g, t)));
    return k.monomial(t, k.d_scale(k.ring().normalize(lambda), f));
}

ExprPtr monomial_expr(const Ultragraph& g, const Monomial& m, const Scalar& lambda) {
    ExprPtr body = expr_projection(m.set);
    if (!m.a.empty()) body = expr_mul(expr_path(g, m.a), body);
    if (!m.b.empty()) body = expr_mul(body, expr_path_adjoint(g, m.b));
    return expr_mul(expr_scalar(lambda), body);
}

bool RelationReport::all_passed() const { return !first_failure().has_value(); }

std::optional<RelationCheck> RelationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) return c;
    }
    return std::nullopt;
}

RelationReport verify_relations(const SkewRing& k) {
    const Ultragraph& g = k.graph();
    RelationReport report;
    auto check = [&](std::string relation, std::string instance, const GradedElement& lhs, const GradedElement& rhs) {
        report.checks.push_back({std::move(relation), std::move(instance), k.equal(lhs, rhs)});
    };
    const auto lattice = lattice_closure(g);
    check("1", "p(∅) = 0", phi_projection(k, {}), {});
    for (const auto& a : lattice) {
        for (const auto& b : lattice) {
            const std::string sa = set_to_string(g, a);
            const std::string sb = set_to_string(g, b);
            const auto pa = phi_projection(k, a);
            const auto pb = phi_projection(k, b);
            const auto pab = phi_projection(k, a.intersect(b));
            check("1", "p(" + sa + ") p(" + sb + ") = p(" + sa + " ∩ " + sb + ")", k.multiply(pa, pb), pab);
            check("1", "p(" + sa + " ∪ " + sb + ") = p(" + sa + ") + p(" + sb + ") - p(" + sa + " ∩ " + sb + ")",
                  phi_projection(k, a.unite(b)), k.sub(k.add(pa, pb), pab));
        }
    }
    for (EdgeId e : g.edges()) {
        const std::string le = g.label(e);
        const auto se = phi_edge(k, e);
        const auto ge = phi_ghost(k, e);
        const auto ps = phi_projection(k, VertexSet{g.source(e)});
        const auto pr = phi_projection(k, g.range(e));
        check("2", "p(s(" + le + ")) s(" + le + ") = s(" + le + ")", k.multiply(ps, se), se);
        check("2", "s(" + le + ") p(r(" + le + ")) = s(" + le + ")", k.multiply(se, pr), se);
        check("2", "p(r(" + le + ")) s*(" + le + ") = s*(" + le + ")", k.multiply(pr, ge), ge);
        check("2", "s*(" + le + ") p(s(" + le + ")) = s*(" + le + ")", k.multiply(ge, ps), ge);
        for (EdgeId f : g.edges()) {
            const std::string lf = g.label(f);
            check("3", "s*(" + le + ") s(" + lf + ") = " + (e == f ? "p(r(" + le + "))" : std::string("0")),
                  k.multiply(ge, phi_edge(k, f)), e == f ? pr : GradedElement{});
        }
    }
    for (VertexId v : g.vertices()) {
        if (g.is_sink(v)) continue;
        GradedElement sum;
        for (EdgeId e : g.emitted(v)) sum = k.add(sum, k.multiply(phi_edge(k, e), phi_ghost(k, e)));
        check("4", "p(" + g.label(v) + ") = Σ s(e) s*(e) over s(e) = " + g.label(v), phi_projection(k, VertexSet{v}), sum);
    }
    return report;
}

}  // namespace ulpa

#include "ulpa/permutative.hpp"

#include "ulpa/error.hpp"

#include <algorithm>

namespace ulpa {

namespace {

const std::set<int>& lookup(const std::map<VertexId, std::set<int>>& m, VertexId v) {
    static const std::set<int> empty;
    auto it = m.find(v);
    return it == m.end() ? empty : it->second;
}

const std::set<int>& lookup(const std::map<EdgeId, std::set<int>>& m, EdgeId e) {
    static const std::set<int> empty;
    auto it = m.find(e);
    return it == m.end() ? empty : it->second;
}

std::set<int> union_over(const PermutativeData& pd, const VertexSet& a) {
    std::set<int> out;
    for (VertexId v : a) {
        const auto& b = lookup(pd.B_v, v);
        out.insert(b.begin(), b.end());
    }
    return out;
}

bool disjoint(const std::set<int>& a, const std::set<int>& b) {
    return std::none_of(a.begin(), a.end(), [&](int x) { return b.count(x) > 0; });
}

// A sub-ultragraph: surviving vertices and edges, ranges cut down to the survivors.
struct View {
    const Ultragraph& g;
    VertexSet vertices;
    std::vector<EdgeId> edges;

    VertexSet range(EdgeId e) const { return g.range(e).intersect(vertices); }
    VertexSet sources_except(std::optional<EdgeId> skip) const {
        std::vector<VertexId> out;
        for (EdgeId e : edges) {
            if (e != skip) out.push_back(g.source(e));
        }
        return VertexSet(std::move(out));
    }
    VertexSet ranges_except(std::optional<EdgeId> skip) const {
        VertexSet out;
        for (EdgeId e : edges) {
            if (e != skip) out = out.unite(range(e));
        }
        return out;
    }
    VertexSet isolated() const { return vertices.minus(ranges_except(std::nullopt).unite(sources_except(std::nullopt))); }

    std::vector<ExtremeVertex> extreme() const {
        std::vector<ExtremeVertex> out;
        const VertexSet all_sources = sources_except(std::nullopt);
        const VertexSet all_ranges = ranges_except(std::nullopt);
        for (EdgeId e : edges) {
            const VertexSet a = range(e);
            if (!a.empty() && !a.intersects(ranges_except(e)) && !a.intersects(all_sources)) {
                out.push_back({a, e, ExtremeVertex::Kind::Final});
            }
        }
        for (EdgeId e : edges) {
            const VertexSet a{g.source(e)};
            if (!vertices.contains(g.source(e))) continue;
            if (!a.intersects(sources_except(e)) && !a.intersects(all_ranges)) {
                out.push_back({a, e, ExtremeVertex::Kind::Initial});
            }
        }
        return out;
    }
};

}  // namespace

void validate_permutative(const Ultragraph& g, const PermutativeData& pd) {
    const int n = static_cast<int>(pd.B.size());
    if (std::set<std::string>(pd.B.begin(), pd.B.end()).size() != pd.B.size()) {
        throw Error(ErrorKind::InvalidSystem, "basis labels are not unique");
    }
    auto check_range = [&](const std::set<int>& s, const std::string& what) {
        for (int x : s) {
            if (x < 0 || x >= n) throw Error(ErrorKind::InvalidSystem, what + " refers to an unknown basis element");
        }
    };
    for (const auto& [v, b] : pd.B_v) check_range(b, "B_" + g.label(v));
    for (const auto& [e, b] : pd.B_e) check_range(b, "B_" + g.label(e));
    const auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            if (!disjoint(lookup(pd.B_v, vs[i]), lookup(pd.B_v, vs[j]))) {
                throw Error(ErrorKind::InvalidSystem, "B_" + g.label(vs[i]) + " meets B_" + g.label(vs[j]));
            }
        }
    }
    for (EdgeId e : g.edges()) {
        const auto& be = lookup(pd.B_e, e);
        const auto& bs = lookup(pd.B_v, g.source(e));
        if (!std::includes(bs.begin(), bs.end(), be.begin(), be.end())) {
            throw Error(ErrorKind::InvalidSystem, "B_" + g.label(e) + " is not inside B_" + g.label(g.source(e)));
        }
        for (EdgeId f : g.edges()) {
            if (f != e && g.source(f) == g.source(e) && !disjoint(be, lookup(pd.B_e, f))) {
                throw Error(ErrorKind::InvalidSystem, "B_" + g.label(e) + " meets B_" + g.label(f));
            }
        }
        static const std::map<int, int> no_map;
        auto it = pd.edge_maps.find(e);
        const auto& map = it == pd.edge_maps.end() ? no_map : it->second;
        std::set<int> domain;
        std::set<int> image;
        for (const auto& [x, y] : map) {
            domain.insert(x);
            image.insert(y);
        }
        if (domain != union_over(pd, g.range(e)) || image != be || image.size() != map.size()) {
            throw Error(ErrorKind::B2BViolation,
                        "edge map of " + g.label(e) + " is not a bijection from B_{r(" + g.label(e) + ")} onto B_" + g.label(e));
        }
    }
}

std::set<int> basis_for_generalized_vertex(const Ultragraph& g, const PermutativeData& pd, const VertexSet& a) {
    require_in_lattice(g, a);
    return union_over(pd, a);
}

VertexSet isolated_vertices(const Ultragraph& g) { return View{g, g.all_vertices(), g.edges()}.isolated(); }

std::vector<ExtremeVertex> extreme_vertices(const Ultragraph& g) { return View{g, g.all_vertices(), g.edges()}.extreme(); }

Stratification stratify(const Ultragraph& g) {
    Stratification out;
    View view{g, g.all_vertices(), g.edges()};
    out.I0 = view.isolated();
    view.vertices = view.vertices.minus(out.I0);
    VertexSet reached;
    for (;;) {
        StratumLevel level;
        level.X = view.extreme();
        if (level.X.empty()) break;
        for (const auto& x : level.X) {
            level.Y.insert(x.edge);
            level.X_bar = level.X_bar.unite(x.set);
        }
        view.vertices = view.vertices.minus(level.X_bar);
        std::erase_if(view.edges, [&](EdgeId e) { return level.Y.count(e) > 0; });
        level.I = view.isolated();
        view.vertices = view.vertices.minus(level.I);
        reached = reached.unite(level.X_bar).unite(level.I);
        out.levels.push_back(std::move(level));
    }
    out.terminated = true;
    VertexSet touched;
    for (EdgeId e : g.edges()) touched = touched.unite(g.range(e)).unite(VertexSet{g.source(e)});
    out.covered = touched == reached;
    return out;
}

EsteaquiReport esteaqui_hypothesis(const Ultragraph& g) {
    EsteaquiReport out;
    out.stratification = stratify(g);
    out.holds = out.stratification.covered && !out.stratification.levels.empty();
    return out;
}

PermutativeData pd_from_discrete(const Ultragraph& g, const DiscreteSystem& ds) {
    PermutativeData pd;
    pd.B = ds.points;
    for (VertexId v : g.vertices()) {
        auto it = ds.D.find(v);
        pd.B_v[v] = it == ds.D.end() ? std::set<int>{} : it->second;
    }
    for (EdgeId e : g.edges()) {
        auto r = ds.R.find(e);
        pd.B_e[e] = r == ds.R.end() ? std::set<int>{} : r->second;
        auto f = ds.f.find(e);
        pd.edge_maps[e] = f == ds.f.end() ? std::map<int, int>{} : f->second;
    }
    return pd;
}

std::optional<int> permutative_generator_apply(const Ultragraph&, const PermutativeData& pd, const Expr& gen, int x) {
    switch (gen.kind) {
        case Expr::Kind::Projection:
            return union_over(pd, gen.set).count(x) ? std::optional<int>(x) : std::nullopt;
        case Expr::Kind::Edge: {
            const auto& m = pd.edge_maps.at(gen.edge);
            auto it = m.find(x);
            return it == m.end() ? std::nullopt : std::optional<int>(it->second);
        }
        case Expr::Kind::Ghost:
            for (const auto& [from, to] : pd.edge_maps.at(gen.edge)) {
                if (to == x) return from;
            }
            return std::nullopt;
        default:
            throw Error(ErrorKind::InvalidArgument, "not a generator");
    }
}

PermutativeTransform permutative_to_branching(const Ultragraph& g, const PermutativeData& pd) {
    validate_permutative(g, pd);
    PermutativeTransform out;
    // Carrier points list the basis in reverse label order.
    std::vector<int> order(pd.B.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pd.B[static_cast<std::size_t>(a)] > pd.B[static_cast<std::size_t>(b)]; });
    std::vector<int> carrier_of(pd.B.size());
    for (std::size_t x = 0; x < order.size(); ++x) carrier_of[static_cast<std::size_t>(order[x])] = static_cast<int>(x);
    out.T = order;

    DiscreteSystem& ds = out.system;
    for (int h : order) ds.points.push_back("x_" + pd.B[static_cast<std::size_t>(h)]);
    auto to_carrier = [&](const std::set<int>& basis) {
        std::set<int> s;
        for (int h : basis) s.insert(carrier_of[static_cast<std::size_t>(h)]);
        return s;
    };
    for (VertexId v : g.vertices()) ds.D[v] = to_carrier(lookup(pd.B_v, v));
    for (EdgeId e : g.edges()) {
        ds.R[e] = to_carrier(lookup(pd.B_e, e));
        auto& f = ds.f[e];
        for (const auto& [from, to] : pd.edge_maps.at(e)) {
            f[carrier_of[static_cast<std::size_t>(from)]] = carrier_of[static_cast<std::size_t>(to)];
        }
    }
    out.report = validate_discrete(g, ds);

    std::vector<ExprPtr> generators;
    for (const auto& a : lattice_closure(g)) generators.push_back(expr_projection(a));
    for (EdgeId e : g.edges()) {
        generators.push_back(expr_edge(e));
        generators.push_back(expr_ghost(e));
    }
    const Ring ring = Ring::rationals();
    out.intertwines = true;
    for (const auto& gen : generators) {
        for (int x = 0; x < static_cast<int>(ds.points.size()); ++x) {
            // T(π(gen) δ_x) against φ(gen)(T δ_x).
            const DiscreteVector moved = discrete_apply(g, ds, ring, *gen, {{x, Scalar(1)}});
            std::optional<int> lhs;
            if (moved.size() > 1 || (!moved.empty() && moved.begin()->second != 1)) out.intertwines = false;
            if (!moved.empty()) lhs = out.T[static_cast<std::size_t>(moved.begin()->first)];
            const std::optional<int> rhs = permutative_generator_apply(g, pd, *gen, out.T[static_cast<std::size_t>(x)]);
            if (lhs != rhs) out.intertwines = false;
            ++out.checks;
        }
    }
    return out;
}

}  // namespace ulpa

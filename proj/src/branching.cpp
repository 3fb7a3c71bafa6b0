#include "ulpa/branching.hpp"

#include "ulpa/error.hpp"
#include "ulpa/skew_algebra.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ulpa {

namespace {

Region unite(const Region& a, const Region& b) { return a.unite(b); }
Region intersect(const Region& a, const Region& b) { return a.intersect(b); }
bool is_empty(const Region& a) { return a.empty(); }
bool subset(const Region& a, const Region& b) { return a.subset_of(b); }

std::set<int> unite(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out = a;
    out.insert(b.begin(), b.end());
    return out;
}
std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}
bool is_empty(const std::set<int>& a) { return a.empty(); }
bool subset(const std::set<int>& a, const std::set<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Axioms (1)-(5) for any carrier whose subsets support ∪, ∩, = and ⊆.
template <class S, class RFn, class DFn, class FFn>
BranchingReport validate_axioms(const Ultragraph& g, AxiomCheck well_formed, RFn r_of, DFn d_of, FFn check_f) {
    BranchingReport report;
    report.checks.push_back(std::move(well_formed));
    const auto edges = g.edges();
    auto record = [&](std::string axiom, std::string failure) {
        report.checks.push_back({std::move(axiom), failure.empty(), std::move(failure)});
    };

    std::string failure;
    for (std::size_t i = 0; i < edges.size() && failure.empty(); ++i) {
        for (std::size_t j = i + 1; j < edges.size() && failure.empty(); ++j) {
            if (!is_empty(intersect(r_of(edges[i]), r_of(edges[j])))) {
                failure = "R_" + g.label(edges[i]) + " meets R_" + g.label(edges[j]);
            }
        }
    }
    record("1", failure);

    failure.clear();
    const auto lattice = lattice_closure(g);
    if (!is_empty(d_of(VertexSet{}))) failure = "D_∅ is not empty";
    for (const auto& a : lattice) {
        for (const auto& b : lattice) {
            if (!failure.empty()) break;
            const S da = d_of(a);
            const S db = d_of(b);
            if (!(intersect(da, db) == d_of(a.intersect(b)))) {
                failure = "D_A ∩ D_B ≠ D_{A∩B} for A=" + set_to_string(g, a) + ", B=" + set_to_string(g, b);
            } else if (!(unite(da, db) == d_of(a.unite(b)))) {
                failure = "D_A ∪ D_B ≠ D_{A∪B} for A=" + set_to_string(g, a) + ", B=" + set_to_string(g, b);
            }
        }
    }
    record("2", failure);

    failure.clear();
    for (EdgeId e : edges) {
        if (failure.empty() && !subset(r_of(e), d_of(VertexSet{g.source(e)}))) {
            failure = "R_" + g.label(e) + " is not inside D_" + g.label(g.source(e));
        }
    }
    record("3", failure);

    failure.clear();
    for (VertexId v : g.vertices()) {
        if (g.is_sink(v) || !failure.empty()) continue;
        S sum{};
        for (EdgeId e : g.emitted(v)) sum = unite(sum, r_of(e));
        if (!(sum == d_of(VertexSet{v}))) failure = "D_" + g.label(v) + " is not the union of the R_e it emits";
    }
    record("4", failure);

    failure.clear();
    for (EdgeId e : edges) {
        if (failure.empty()) failure = check_f(e);
    }
    record("5", failure);

    report.nonempty_d = true;
    for (const auto& a : lattice) {
        if (!a.empty() && is_empty(d_of(a))) report.nonempty_d = false;
    }
    return report;
}

}  // namespace

Region BranchingSystem::d_region(const VertexSet& a) const {
    if (auto it = D.find(a); it != D.end()) return it->second;
    Region out;
    for (VertexId v : a) {
        if (auto it = D.find(VertexSet{v}); it != D.end()) out = out.unite(it->second);
    }
    return out;
}

BranchingSystem build_interval_system(const Ultragraph& g) {
    BranchingSystem bs;
    for (EdgeId e : g.edges()) bs.R[e] = Region({Interval::block(g.label(e))});
    for (VertexId v : g.vertices()) {
        Region d;
        if (g.is_sink(v)) {
            d.add(Interval::block(g.label(v)));
        } else {
            for (EdgeId e : g.emitted(v)) d = d.unite(bs.R[e]);
        }
        bs.D[VertexSet{v}] = d;
    }
    for (EdgeId e : g.edges()) {
        std::vector<std::string> blocks;
        for (VertexId v : g.range(e)) {
            if (g.is_sink(v)) {
                blocks.push_back(g.label(v));
            } else {
                for (EdgeId out : g.emitted(v)) blocks.push_back(g.label(out));
            }
        }
        const Scalar n(static_cast<long>(blocks.size()));
        std::vector<AffinePiece> pieces;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Scalar lo = Scalar(static_cast<long>(i)) / n;
            const Scalar hi = Scalar(static_cast<long>(i + 1)) / n;
            pieces.push_back(AffinePiece::between(Interval::block(blocks[i]), Interval::make(lo, hi, g.label(e))));
        }
        bs.f[e] = PiecewiseMap(std::move(pieces));
    }
    return bs;
}

bool BranchingReport::valid() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

BranchingReport validate_branching(const Ultragraph& g, const BranchingSystem& bs) {
    AxiomCheck well_formed{"well-formed", true, {}};
    auto fail = [&](std::string why) {
        if (well_formed.passed) well_formed = {"well-formed", false, std::move(why)};
    };
    for (EdgeId e : g.edges()) {
        if (!bs.R.count(e)) fail("R_" + g.label(e) + " is missing");
        auto it = bs.f.find(e);
        if (it == bs.f.end()) {
            fail("f_" + g.label(e) + " is missing");
            continue;
        }
        for (const auto& piece : it->second.pieces()) {
            try {
                piece.check();
            } catch (const Error& err) {
                fail(err.what());
            }
        }
    }
    for (VertexId v : g.vertices()) {
        if (!bs.D.count(VertexSet{v})) fail("D_" + g.label(v) + " is missing");
    }
    auto r_of = [&](EdgeId e) {
        auto it = bs.R.find(e);
        return it == bs.R.end() ? Region{} : it->second;
    };
    auto d_of = [&](const VertexSet& a) { return bs.d_region(a); };
    auto check_f = [&](EdgeId e) -> std::string {
        auto it = bs.f.find(e);
        if (it == bs.f.end()) return "f_" + g.label(e) + " is missing";
        const PiecewiseMap& f = it->second;
        if (!f.injective()) return "f_" + g.label(e) + " is not injective";
        if (!(f.domain() == bs.d_region(g.range(e)))) return "f_" + g.label(e) + " is not defined exactly on D_{r(e)}";
        if (!(f.image() == r_of(e))) return "f_" + g.label(e) + " is not onto R_" + g.label(e);
        return {};
    };
    return validate_axioms<Region>(g, std::move(well_formed), r_of, d_of, check_f);
}

Representation::Representation(const Ultragraph& g, const BranchingSystem& bs, Ring ring)
    : g_(g), bs_(bs), ring_(std::move(ring)) {
    const BranchingReport report = validate_branching(g, bs);
    for (const auto& c : report.checks) {
        if (!c.passed) throw Error(ErrorKind::InvalidSystem, "axiom " + c.axiom + " fails: " + c.detail);
    }
    unit_region_ = bs_.d_region(g.all_vertices());
}

FinSuppVector Representation::project(const Region& region, const FinSuppVector& phi) const {
    FinSuppVector out;
    for (const auto& [x, c] : phi) {
        if (region.contains(x)) out.emplace(x, c);
    }
    return out;
}

FinSuppVector Representation::push(EdgeId e, const FinSuppVector& phi) const {
    FinSuppVector out;
    const PiecewiseMap& f = bs_.f.at(e);
    for (const auto& [x, c] : phi) {
        if (auto y = f.apply(x)) out.emplace(*y, c);
    }
    return out;
}

FinSuppVector Representation::pull(EdgeId e, const FinSuppVector& phi) const {
    FinSuppVector out;
    const PiecewiseMap& f = bs_.f.at(e);
    for (const auto& [x, c] : phi) {
        if (auto y = f.apply_inverse(x)) out.emplace(*y, c);
    }
    return out;
}

FinSuppVector Representation::combine(const FinSuppVector& a, const FinSuppVector& b, bool subtract) const {
    FinSuppVector out = a;
    for (const auto& [x, c] : b) {
        Scalar& slot = out[x];
        slot = subtract ? ring_.sub(slot, c) : ring_.add(slot, c);
        if (ring_.is_zero(slot)) out.erase(x);
    }
    return out;
}

FinSuppVector Representation::apply(const Expr& expr, const FinSuppVector& phi) const {
    switch (expr.kind) {
        case Expr::Kind::Scalar: {
            FinSuppVector out;
            const Scalar lambda = ring_.normalize(expr.value);
            for (const auto& [x, c] : project(unit_region_, phi)) {
                Scalar v = ring_.mul(lambda, c);
                if (!ring_.is_zero(v)) out.emplace(x, std::move(v));
            }
            return out;
        }
        case Expr::Kind::Projection:
            return project(bs_.d_region(expr.set), phi);
        case Expr::Kind::Edge:
            return push(expr.edge, phi);
        case Expr::Kind::Ghost:
            return pull(expr.edge, phi);
        case Expr::Kind::Add:
            return combine(apply(*expr.lhs, phi), apply(*expr.rhs, phi), false);
        case Expr::Kind::Sub:
            return combine(apply(*expr.lhs, phi), apply(*expr.rhs, phi), true);
        case Expr::Kind::Neg:
            return combine({}, apply(*expr.lhs, phi), true);
        case Expr::Kind::Mul:
            return apply(*expr.lhs, apply(*expr.rhs, phi));
    }
    throw Error(ErrorKind::InvalidArgument, "malformed expression");
}

FinSuppVector rep_apply(const Ultragraph& g, const BranchingSystem& bs, const Expr& expr, const FinSuppVector& phi,
                        const Ring& ring) {
    return Representation(g, bs, ring).apply(expr, phi);
}

BranchingSystem build_rotation_variant(const Ultragraph& g, const BranchingSystem& bs, int q) {
    if (q < 1) throw Error(ErrorKind::InvalidArgument, "rotation denominator must be positive");
    BranchingSystem out = bs;
    const Scalar theta = Scalar(1) / q;
    for (const Path& c : enumerate_cycles(g)) {
        if (!exits_of_closed_path(g, c).empty()) continue;
        for (EdgeId e : c) {
            const auto dom = bs.f.at(e).domain().intervals();
            const auto img = bs.f.at(e).image().intervals();
            if (dom.size() != 1 || img.size() != 1) {
                throw Error(ErrorKind::InvalidArgument, "f_" + g.label(e) + " is not a single block map");
            }
            const Interval& src = dom.front();
            const Interval& dst = img.front();
            if (q == 1) {
                out.f[e] = PiecewiseMap({AffinePiece::between(src, dst)});
                continue;
            }
            const Scalar cut = src.hi - theta * (src.hi - src.lo);
            const Scalar mid = dst.lo + theta * (dst.hi - dst.lo);
            out.f[e] = PiecewiseMap({
                AffinePiece::between(Interval::make(src.lo, cut, src.label), Interval::make(mid, dst.hi, dst.label)),
                AffinePiece::between(Interval::make(cut, src.hi, src.label), Interval::make(dst.lo, mid, dst.label)),
            });
        }
    }
    return out;
}

PiecewiseMap path_map(const BranchingSystem& bs, const Path& c) {
    PiecewiseMap out = bs.f.at(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) out = compose(bs.f.at(c[i]), out);
    return out;
}

bool FaithfulnessVerdict::faithful() const { return !failing().has_value(); }

std::optional<CycleVerdict> FaithfulnessVerdict::failing() const {
    for (const auto& c : cycles) {
        if (!c.witness) return c;
    }
    return std::nullopt;
}

namespace {

bool fixes(const PiecewiseMap& f, const Point& z) {
    auto image = f.apply(z);
    return image && *image == z;
}

// Breakpoints of every power plus isolated fixed points; between two
// consecutive breakpoints each power is either the identity or fixes nothing.
std::vector<Point> fixed_point_candidates(const Region& domain, const std::vector<PiecewiseMap>& powers) {
    std::map<std::string, std::set<Scalar>> cuts;
    for (const auto& i : domain.intervals()) {
        cuts[i.label].insert(i.lo);
        cuts[i.label].insert(i.hi);
    }
    for (const auto& f : powers) {
        for (const auto& p : f.pieces()) {
            cuts[p.src.label].insert(p.src.lo);
            cuts[p.src.label].insert(p.src.hi);
            if (p.src.label == p.dst.label && p.scale != 1) {
                cuts[p.src.label].insert(p.offset / (1 - p.scale));
            }
        }
    }
    std::vector<Point> out;
    for (const auto& [label, values] : cuts) {
        std::vector<Scalar> sorted(values.begin(), values.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            out.push_back({sorted[i], label});
            if (i + 1 < sorted.size()) out.push_back({(sorted[i] + sorted[i + 1]) / 2, label});
        }
    }
    std::erase_if(out, [&](const Point& p) { return !domain.contains(p); });
    return out;
}

}  // namespace

FaithfulnessVerdict check_faithfulness_criterion(const Ultragraph& g, const BranchingSystem& bs, int n_max) {
    if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
    const BranchingReport report = validate_branching(g, bs);
    if (!report.valid()) throw Error(ErrorKind::InvalidSystem, "system fails the branching axioms");
    if (!report.nonempty_d) throw Error(ErrorKind::InvalidSystem, "some D_A is empty for a nonempty A");

    FaithfulnessVerdict verdict{n_max, {}};
    for (const Path& c : enumerate_cycles(g)) {
        if (!exits_of_closed_path(g, c).empty()) continue;
        CycleVerdict cv{c, std::nullopt, std::nullopt};
        const Region domain = bs.d_region(g.range(c.back()));
        const PiecewiseMap fc = path_map(bs, c);
        std::vector<PiecewiseMap> powers{fc};
        for (int n = 2; n <= n_max; ++n) powers.push_back(compose(fc, powers.back()));
        for (int n = 1; n <= n_max && !cv.j0; ++n) {
            const auto& p = powers[static_cast<std::size_t>(n - 1)];
            if (p.is_identity() && p.domain() == domain) cv.j0 = n;
        }
        if (!cv.j0) {
            const auto candidates = fixed_point_candidates(domain, powers);
            std::vector<int> periods;
            for (const Point& z : candidates) {
                int period = 0;
                for (int n = 1; n <= n_max && period == 0; ++n) {
                    if (fixes(powers[static_cast<std::size_t>(n - 1)], z)) period = n;
                }
                if (period == 0) {
                    cv.witness = z;
                    break;
                }
                periods.push_back(period);
            }
            if (!cv.witness) {
                // Every point is periodic, so the lcm of the periods is an identity power.
                long j0 = 1;
                for (int p : periods) j0 = std::lcm(j0, static_cast<long>(p));
                if (j0 > 100000) throw Error(ErrorKind::InvalidArgument, "period too large to certify");
                PiecewiseMap power = fc;
                for (long n = 2; n <= j0; ++n) power = compose(fc, power);
                if (!power.is_identity() || !(power.domain() == domain)) {
                    throw std::logic_error("periodic cells did not assemble into an identity power");
                }
                cv.j0 = static_cast<int>(j0);
            }
        }
        verdict.cycles.push_back(std::move(cv));
    }
    return verdict;
}

std::vector<Point> probe_points(const Ultragraph& g, const BranchingSystem& bs, int depth) {
    std::set<Point> seen;
    auto seed_interval = [&](const Interval& i) {
        seen.insert({i.lo, i.label});
        seen.insert({i.midpoint(), i.label});
    };
    for (const auto& [e, r] : bs.R) {
        for (const auto& i : r.intervals()) seed_interval(i);
    }
    for (const auto& [a, d] : bs.D) {
        for (const auto& i : d.intervals()) seed_interval(i);
    }
    for (const auto& [e, f] : bs.f) {
        for (const auto& p : f.pieces()) {
            seed_interval(p.src);
            seed_interval(p.dst);
        }
    }
    std::vector<Point> frontier(seen.begin(), seen.end());
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<Point> next;
        for (const Point& z : frontier) {
            for (EdgeId e : g.edges()) {
                auto it = bs.f.find(e);
                if (it == bs.f.end()) continue;
                for (auto image : {it->second.apply(z), it->second.apply_inverse(z)}) {
                    if (image && seen.insert(*image).second) next.push_back(*image);
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::optional<KernelWitness> kernel_witness(const Ultragraph& g, const BranchingSystem& bs, int n_max) {
    const auto failing = check_faithfulness_criterion(g, bs, n_max).failing();
    if (!failing) return std::nullopt;
    KernelWitness w;
    w.cycle = failing->cycle;
    w.j0 = *failing->j0;
    ExprPtr power;
    for (int i = 0; i < w.j0; ++i) {
        for (EdgeId e : w.cycle) power = power ? expr_mul(power, expr_edge(e)) : expr_edge(e);
    }
    w.expr = expr_sub(power, expr_projection(VertexSet{g.source(w.cycle.front())}));
    const SkewRing k(g, Ring::rationals());
    w.algebra_nonzero = !k.is_zero(eval_expression(k, *w.expr));
    const Representation rep(g, bs);
    const auto probes = probe_points(g, bs);
    w.probes = probes.size();
    w.representation_zero = std::all_of(probes.begin(), probes.end(), [&](const Point& z) {
        return rep.apply(*w.expr, {{z, Scalar(1)}}).empty();
    });
    return w;
}

std::set<int> DiscreteSystem::d_set(const VertexSet& a) const {
    std::set<int> out;
    for (VertexId v : a) {
        if (auto it = D.find(v); it != D.end()) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

BranchingReport validate_discrete(const Ultragraph& g, const DiscreteSystem& ds) {
    AxiomCheck well_formed{"well-formed", true, {}};
    const int n = static_cast<int>(ds.points.size());
    auto in_range = [n](int i) { return i >= 0 && i < n; };
    for (const auto& [e, r] : ds.R) {
        if (!std::all_of(r.begin(), r.end(), in_range)) well_formed = {"well-formed", false, "R_" + g.label(e) + " has an unknown point"};
    }
    for (const auto& [v, d] : ds.D) {
        if (!std::all_of(d.begin(), d.end(), in_range)) well_formed = {"well-formed", false, "D_" + g.label(v) + " has an unknown point"};
    }
    auto r_of = [&](EdgeId e) {
        auto it = ds.R.find(e);
        return it == ds.R.end() ? std::set<int>{} : it->second;
    };
    auto d_of = [&](const VertexSet& a) { return ds.d_set(a); };
    auto check_f = [&](EdgeId e) -> std::string {
        auto it = ds.f.find(e);
        const std::map<int, int> empty;
        const auto& f = it == ds.f.end() ? empty : it->second;
        std::set<int> domain;
        std::set<int> image;
        for (const auto& [x, y] : f) {
            domain.insert(x);
            image.insert(y);
        }
        if (image.size() != f.size()) return "f_" + g.label(e) + " is not injective";
        if (domain != ds.d_set(g.range(e))) return "f_" + g.label(e) + " is not defined exactly on D_{r(e)}";
        if (image != r_of(e)) return "f_" + g.label(e) + " is not onto R_" + g.label(e);
        return {};
    };
    return validate_axioms<std::set<int>>(g, std::move(well_formed), r_of, d_of, check_f);
}

DiscreteSystem restrict_to_points(const Ultragraph& g, const BranchingSystem& bs, const std::vector<Point>& seeds,
                                  std::size_t cap) {
    std::set<Point> seen(seeds.begin(), seeds.end());
    std::deque<Point> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        const Point z = queue.front();
        queue.pop_front();
        for (const auto& [e, f] : bs.f) {
            for (auto image : {f.apply(z), f.apply_inverse(z)}) {
                if (image && seen.insert(*image).second) {
                    if (seen.size() > cap) {
                        throw Error(ErrorKind::InvalidArgument, "orbit closure exceeds " + std::to_string(cap) + " points");
                    }
                    queue.push_back(*image);
                }
            }
        }
    }
    const std::vector<Point> points(seen.begin(), seen.end());
    auto index_of = [&](const Point& p) {
        return static_cast<int>(std::lower_bound(points.begin(), points.end(), p) - points.begin());
    };
    DiscreteSystem ds;
    for (const auto& p : points) ds.points.push_back(to_string(p));
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        const Point& p = points[static_cast<std::size_t>(i)];
        for (EdgeId e : g.edges()) {
            if (bs.R.count(e) && bs.R.at(e).contains(p)) ds.R[e].insert(i);
        }
        for (VertexId v : g.vertices()) {
            if (bs.d_region(VertexSet{v}).contains(p)) ds.D[v].insert(i);
        }
        for (const auto& [e, f] : bs.f) {
            if (auto image = f.apply(p)) ds.f[e][i] = index_of(*image);
        }
    }
    for (EdgeId e : g.edges()) {
        ds.R[e];
        ds.f[e];
    }
    for (VertexId v : g.vertices()) ds.D[v];
    return ds;
}

DiscreteVector discrete_apply(const Ultragraph& g, const DiscreteSystem& ds, const Ring& ring, const Expr& expr,
                              const DiscreteVector& phi) {
    auto project = [&](const std::set<int>& keep, const DiscreteVector& v) {
        DiscreteVector out;
        for (const auto& [x, c] : v) {
            if (keep.count(x)) out.emplace(x, c);
        }
        return out;
    };
    auto combine = [&](DiscreteVector a, const DiscreteVector& b, bool subtract) {
        for (const auto& [x, c] : b) {
            Scalar& slot = a[x];
            slot = subtract ? ring.sub(slot, c) : ring.add(slot, c);
            if (ring.is_zero(slot)) a.erase(x);
        }
        return a;
    };
    switch (expr.kind) {
        case Expr::Kind::Scalar: {
            DiscreteVector out;
            for (const auto& [x, c] : project(ds.d_set(g.all_vertices()), phi)) {
                Scalar v = ring.mul(ring.normalize(expr.value), c);
                if (!ring.is_zero(v)) out.emplace(x, std::move(v));
            }
            return out;
        }
        case Expr::Kind::Projection:
            return project(ds.d_set(expr.set), phi);
        case Expr::Kind::Edge: {
            DiscreteVector out;
            const auto& f = ds.f.at(expr.edge);
            for (const auto& [x, c] : phi) {
                if (auto it = f.find(x); it != f.end()) out.emplace(it->second, c);
            }
            return out;
        }
        case Expr::Kind::Ghost: {
            DiscreteVector out;
            for (const auto& [x, y] : ds.f.at(expr.edge)) {
                if (auto it = phi.find(y); it != phi.end()) out.emplace(x, it->second);
            }
            return out;
        }
        case Expr::Kind::Add:
            return combine(discrete_apply(g, ds, ring, *expr.lhs, phi), discrete_apply(g, ds, ring, *expr.rhs, phi), false);
        case Expr::Kind::Sub:
            return combine(discrete_apply(g, ds, ring, *expr.lhs, phi), discrete_apply(g, ds, ring, *expr.rhs, phi), true);
        case Expr::Kind::Neg:
            return combine({}, discrete_apply(g, ds, ring, *expr.lhs, phi), true);
        case Expr::Kind::Mul:
            return discrete_apply(g, ds, ring, *expr.lhs, discrete_apply(g, ds, ring, *expr.rhs, phi));
    }
    throw Error(ErrorKind::InvalidArgument, "malformed expression");
}

}  // namespace ulpa

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "support.hpp"
#include "ulpa/branching.hpp"
#include "ulpa/error.hpp"
#include "ulpa/sampling.hpp"

#include <algorithm>
#include <set>

using namespace ulpa;
using namespace ulpa::test;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

Point pt(long n, long d, const std::string& label) { return {q(n, d), label}; }

FinSuppVector delta(const Point& p) { return {{p, Scalar(1)}}; }

FinSuppVector nonzero(const FinSuppVector& v) {
    FinSuppVector out;
    for (const auto& [p, c] : v) {
        if (c != 0) out.emplace(p, c);
    }
    return out;
}

ExprPtr expr(const Ultragraph& g, const std::string& text) { return parse_element_expr(g, text); }

bool axiom_passed(const BranchingReport& r, const std::string& axiom) {
    for (const auto& c : r.checks) {
        if (c.axiom == axiom) return c.passed;
    }
    FAIL("axiom not reported: " << axiom);
    return false;
}

FinSuppVector combine(const FinSuppVector& a, const FinSuppVector& b) {
    FinSuppVector out = a;
    for (const auto& [p, c] : b) out[p] += c;
    return nonzero(out);
}

}  // namespace

TEST_CASE("interval construction") {
    auto mix = bundled("G_MIX");
    auto bs = build_interval_system(mix);
    EdgeId e = mix.edge("e");
    auto inverse = bs.f.at(e).inverse();
    REQUIRE(inverse.pieces().size() == 2);
    std::vector<std::pair<Interval, Interval>> got;
    for (const auto& p : inverse.pieces()) got.emplace_back(p.src, p.dst);
    std::sort(got.begin(), got.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    CHECK(got[0].first == Interval::make(q(0), q(1, 2), "e"));
    CHECK(got[0].second == Interval::block("e"));
    CHECK(got[1].first == Interval::make(q(1, 2), q(1), "e"));
    CHECK(got[1].second == Interval::block("w"));

    auto chain = bundled("G_CHAIN");
    auto bc = build_interval_system(chain);
    const auto& pieces = bc.f.at(chain.edge("e")).pieces();
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].src == Interval::block("w"));
    CHECK(pieces[0].dst == Interval::block("e"));

    auto loop = bundled("G_LOOP");
    auto bl = build_interval_system(loop);
    CHECK(bl.f.at(loop.edge("e")).is_identity());

    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        auto report = validate_branching(g, build_interval_system(g));
        CHECK_MESSAGE(report.valid(), name);
        CHECK(report.nonempty_d);
    }
}

TEST_CASE("validation flags broken axioms") {
    auto loop2 = bundled("G_LOOP2");
    auto bs = build_interval_system(loop2);
    bs.R[loop2.edge("e2")] = bs.R.at(loop2.edge("e"));
    auto report = validate_branching(loop2, bs);
    CHECK_FALSE(report.valid());
    CHECK_FALSE(axiom_passed(report, "1"));

    auto mix = bundled("G_MIX");
    auto bm = build_interval_system(mix);
    bm.D[VertexSet{mix.vertex("v")}].add(Interval::make(q(0), q(1), "extra"));
    report = validate_branching(mix, bm);
    CHECK_FALSE(axiom_passed(report, "4"));

    auto broken = build_interval_system(mix);
    auto pieces = broken.f.at(mix.edge("e")).pieces();
    pieces.pop_back();
    broken.f[mix.edge("e")] = PiecewiseMap(pieces);
    CHECK_FALSE(axiom_passed(validate_branching(mix, broken), "5"));
    CHECK_THROWS_AS(Representation(mix, broken), Error);
}

TEST_CASE("f_e is an exact bijection D_{r(e)} -> R_e") {
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        for (const auto& bs : {build_interval_system(g), build_rotation_variant(g, build_interval_system(g), 5)}) {
            for (EdgeId e : g.edges()) {
                const auto& f = bs.f.at(e);
                CHECK(f.injective());
                CHECK(f.domain() == bs.d_region(g.range(e)));
                CHECK(f.image() == bs.R.at(e));
                CHECK(compose(f, f.inverse()).simplified().is_identity());
                CHECK(compose(f.inverse(), f).simplified().is_identity());
                CHECK(compose(f, f.inverse()).domain() == bs.R.at(e));
                CHECK(compose(f.inverse(), f).domain() == f.domain());
            }
        }
    }
}

TEST_CASE("induced representation on delta vectors") {
    auto chain = bundled("G_CHAIN");
    auto bc = build_interval_system(chain);
    CHECK(rep_apply(chain, bc, *expr(chain, "s(e)"), delta(pt(1, 3, "w"))) == delta(pt(1, 3, "e")));
    CHECK(nonzero(rep_apply(chain, bc, *expr_projection(VertexSet{}), delta(pt(1, 3, "w")))).empty());

    auto mix = bundled("G_MIX");
    auto bm = build_interval_system(mix);
    CHECK(rep_apply(mix, bm, *expr(mix, "p(w)"), delta(pt(1, 4, "w"))) == delta(pt(1, 4, "w")));
    CHECK(nonzero(rep_apply(mix, bm, *expr(mix, "p(w)"), delta(pt(1, 4, "e")))).empty());
    CHECK(rep_apply(mix, bm, *expr(mix, "s*(e)"), delta(pt(3, 4, "e"))) == delta(pt(1, 2, "w")));
    CHECK(nonzero(rep_apply(mix, bm, *expr(mix, "s(e)"), delta(pt(3, 4, "x")))).empty());
}

TEST_CASE("the induced representation is a homomorphism") {
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        for (const auto& bs : {build_interval_system(g), build_rotation_variant(g, build_interval_system(g), 7)}) {
            Representation rep(g, bs);
            auto probes = probe_points(g, bs, 3);
            Sampler sampler(g, 31);
            for (int i = 0; i < 15; ++i) {
                auto x = sampler.random_expression(2);
                auto y = sampler.random_expression(2);
                FinSuppVector phi;
                for (std::size_t j = 0; j < probes.size(); j += 3) phi[probes[j]] = Scalar(static_cast<long>(j % 5) + 1);
                CHECK(nonzero(rep.apply(*expr_mul(x, y), phi)) == nonzero(rep.apply(*x, rep.apply(*y, phi))));
                CHECK(nonzero(rep.apply(*expr_add(x, y), phi)) == combine(rep.apply(*x, phi), rep.apply(*y, phi)));
                FinSuppVector psi = delta(probes[static_cast<std::size_t>(i) % probes.size()]);
                CHECK(nonzero(rep.apply(*x, combine(phi, psi))) == combine(rep.apply(*x, phi), rep.apply(*x, psi)));
            }
        }
    }
}

TEST_CASE("defining relations hold under the representation") {
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        auto bs = build_interval_system(g);
        Representation rep(g, bs);
        auto probes = probe_points(g, bs, 3);
        auto same = [&](const std::string& lhs, const std::string& rhs) {
            for (const auto& p : probes) {
                CHECK_MESSAGE(nonzero(rep.apply(*expr(g, lhs), delta(p))) == nonzero(rep.apply(*expr(g, rhs), delta(p))),
                              name << ": " << lhs << " vs " << rhs << " at " << to_string(p));
            }
        };
        auto label_set = [&](const VertexSet& s) {
            std::string out = "p({";
            bool first = true;
            for (VertexId v : s) {
                out += (first ? "" : ",") + g.label(v);
                first = false;
            }
            return out + "})";
        };
        auto lattice = lattice_closure(g);
        for (const auto& a : lattice) {
            if (a.empty()) continue;
            for (const auto& b : lattice) {
                if (b.empty()) continue;
                auto meet = a.intersect(b);
                same(label_set(a) + "*" + label_set(b), meet.empty() ? "0" : label_set(meet));
                auto join = a.unite(b);
                std::string rhs = label_set(a) + "+" + label_set(b) + (meet.empty() ? "" : "-" + label_set(meet));
                same(label_set(join), rhs);
            }
        }
        for (EdgeId e : g.edges()) {
            std::string se = "s(" + g.label(e) + ")";
            std::string sv = "p(" + g.label(g.source(e)) + ")";
            same(sv + "*" + se, se);
            same(se + "*" + label_set(g.range(e)), se);
            for (EdgeId f : g.edges()) {
                same("s*(" + g.label(e) + ")*s(" + g.label(f) + ")", e == f ? label_set(g.range(e)) : "0");
            }
        }
        for (VertexId v : g.vertices()) {
            if (g.is_sink(v)) continue;
            std::string sum;
            for (EdgeId e : g.emitted(v)) sum += (sum.empty() ? "" : "+") + ("s(" + g.label(e) + ")*s*(" + g.label(e) + ")");
            same("p(" + g.label(v) + ")", sum);
        }
    }
}

TEST_CASE("rotation variant") {
    auto loop = bundled("G_LOOP");
    auto base = build_interval_system(loop);
    auto rotated = build_rotation_variant(loop, base, 3);
    const auto& f = rotated.f.at(loop.edge("e"));
    CHECK(f.apply(pt(0, 1, "e")) == pt(1, 3, "e"));
    CHECK(f.apply(pt(1, 2, "e")) == pt(5, 6, "e"));
    CHECK(f.apply(pt(5, 6, "e")) == pt(1, 6, "e"));
    CHECK(validate_branching(loop, rotated).valid());
    CHECK(validate_branching(loop, build_rotation_variant(loop, base, 1)).valid());

    auto mix = bundled("G_MIX");
    auto bm = build_interval_system(mix);
    auto same = build_rotation_variant(mix, bm, 4);
    for (EdgeId e : mix.edges()) {
        REQUIRE(same.f.at(e).pieces().size() == bm.f.at(e).pieces().size());
        for (std::size_t i = 0; i < bm.f.at(e).pieces().size(); ++i) {
            const auto& a = same.f.at(e).pieces()[i];
            const auto& b = bm.f.at(e).pieces()[i];
            CHECK(a.src == b.src);
            CHECK(a.dst == b.dst);
            CHECK(a.scale == b.scale);
            CHECK(a.offset == b.offset);
        }
    }
}


TEST_CASE("faithfulness criterion") {
    auto loop = bundled("G_LOOP");
    auto base = build_interval_system(loop);
    auto verdict = check_faithfulness_criterion(loop, base, 10);
    CHECK_FALSE(verdict.faithful());
    REQUIRE(verdict.failing());
    CHECK(verdict.failing()->j0 == 1);
    CHECK(verdict.failing()->cycle == path(loop, {"e"}));

    auto rot3 = build_rotation_variant(loop, base, 3);
    verdict = check_faithfulness_criterion(loop, rot3, 2);
    CHECK(verdict.faithful());
    REQUIRE(verdict.cycles.size() == 1);
    REQUIRE(verdict.cycles[0].witness);
    CHECK(*verdict.cycles[0].witness == pt(0, 1, "e"));
    verdict = check_faithfulness_criterion(loop, rot3, 3);
    CHECK_FALSE(verdict.faithful());
    CHECK(verdict.failing()->j0 == 3);

    auto rot97 = build_rotation_variant(loop, base, 97);
    CHECK(check_faithfulness_criterion(loop, rot97, 50).faithful());
    CHECK(check_faithfulness_criterion(loop, rot97, 96).faithful());
    CHECK_FALSE(check_faithfulness_criterion(loop, rot97, 97).faithful());

    auto mix = bundled("G_MIX");
    verdict = check_faithfulness_criterion(mix, build_interval_system(mix), 5);
    CHECK(verdict.faithful());
    CHECK(verdict.cycles.empty());

    CHECK_THROWS_AS(check_faithfulness_criterion(loop, base, 0), Error);
}

TEST_CASE("witnesses are checked by iterating f_c pointwise") {
    for (int qq : {2, 5, 12}) {
        auto loop = bundled("G_LOOP");
        auto bs = build_rotation_variant(loop, build_interval_system(loop), qq);
        auto verdict = check_faithfulness_criterion(loop, bs, qq - 1);
        REQUIRE(verdict.faithful());
        Point z = *verdict.cycles[0].witness;
        Point y = z;
        for (int n = 1; n < qq; ++n) {
            y = *bs.f.at(loop.edge("e")).apply(y);
            CHECK_FALSE(y == z);
        }
        y = *bs.f.at(loop.edge("e")).apply(y);
        CHECK(y == z);
    }
}

TEST_CASE("kernel witness") {
    auto loop = bundled("G_LOOP");
    auto base = build_interval_system(loop);
    auto witness = kernel_witness(loop, base);
    REQUIRE(witness);
    CHECK(print_expr(loop, *witness->expr) == "s(e) - p(v)");
    CHECK(witness->algebra_nonzero);
    CHECK(witness->representation_zero);
    CHECK(witness->probes > 0);
    SkewRing k(loop, Ring::rationals());
    CHECK_FALSE(oracle_zero(loop, k.ring(), eval_expression(k, *witness->expr)));
    for (const auto& p : probe_points(loop, base)) CHECK(nonzero(rep_apply(loop, base, *witness->expr, delta(p))).empty());

    CHECK_FALSE(kernel_witness(loop, build_rotation_variant(loop, base, 3), 2));
    auto chain = bundled("G_CHAIN");
    CHECK_FALSE(kernel_witness(chain, build_interval_system(chain)));

    auto rot3 = build_rotation_variant(loop, base, 3);
    witness = kernel_witness(loop, rot3, 5);
    REQUIRE(witness);
    CHECK(witness->j0 == 3);
    CHECK(witness->representation_zero);
}

TEST_CASE("probe points are closed under the edge maps") {
    auto mix = bundled("G_MIX");
    auto bs = build_interval_system(mix);
    auto probes = probe_points(mix, bs, 4);
    std::set<Point> set(probes.begin(), probes.end());
    CHECK(set.count(pt(1, 2, "e")));
    CHECK(set.count(pt(0, 1, "w")));
    CHECK(set.size() == probes.size());
}

TEST_CASE("discrete restriction") {
    auto chain = bundled("G_CHAIN");
    auto bc = build_interval_system(chain);
    auto ds = restrict_to_points(chain, bc, {pt(1, 3, "w")});
    CHECK(ds.points.size() == 2);
    CHECK(validate_discrete(chain, ds).valid());

    auto mix = bundled("G_MIX");
    auto bm = build_interval_system(mix);
    auto dm = restrict_to_points(mix, bm, {pt(0, 1, "e")});
    CHECK(validate_discrete(mix, dm).valid());
    CHECK_THROWS_AS(restrict_to_points(mix, bm, {pt(1, 3, "e")}, 5), Error);

    Sampler sampler(mix, 4);
    for (int i = 0; i < 20; ++i) {
        auto x = sampler.random_expression(3);
        for (std::size_t j = 0; j < dm.points.size(); ++j) {
            DiscreteVector phi{{static_cast<int>(j), Scalar(1)}};
            auto discrete = discrete_apply(mix, dm, Ring::rationals(), *x, phi);
            FinSuppVector expected;
            for (const auto& [idx, c] : discrete) {
                if (c == 0) continue;
                const auto& name = dm.points[static_cast<std::size_t>(idx)];
                auto at = name.find('@');
                expected[Point{parse_rational(name.substr(0, at)), name.substr(at + 1)}] = c;
            }
            const auto& name = dm.points[j];
            auto at = name.find('@');
            Point p{parse_rational(name.substr(0, at)), name.substr(at + 1)};
            CHECK(nonzero(rep_apply(mix, bm, *x, delta(p))) == expected);
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "ulpa/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace ulpa;
using namespace ulpa::test;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

// Brute force: every subset of G^0 reachable from the generators by pairwise
// union and intersection, tracked as bitmasks.
std::set<unsigned> lattice_oracle(const Ultragraph& g) {
    auto mask = [](const VertexSet& s) {
        unsigned m = 0;
        for (VertexId v : s) m |= 1u << v.index;
        return m;
    };
    std::set<unsigned> out;
    for (VertexId v : g.vertices()) out.insert(1u << v.index);
    for (EdgeId e : g.edges()) out.insert(mask(g.range(e)));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<unsigned> now(out.begin(), out.end());
        for (unsigned a : now) {
            for (unsigned b : now) {
                grew |= out.insert(a | b).second;
                grew |= out.insert(a & b).second;
            }
        }
    }
    out.insert(0u);
    return out;
}

// Closed edge sequences with pairwise distinct sources, up to |G^0| edges,
// each rotated to its least label sequence.
std::set<std::vector<std::string>> cycle_oracle(const Ultragraph& g) {
    std::set<std::vector<std::string>> out;
    std::vector<EdgeId> edges = g.edges();
    std::function<void(Path&)> extend = [&](Path& p) {
        if (!p.empty() && g.range(p.back()).contains(g.source(p.front()))) {
            bool distinct = true;
            std::set<int> sources;
            for (EdgeId e : p) distinct &= sources.insert(g.source(e).index).second;
            bool path_ok = true;
            for (std::size_t i = 0; i + 1 < p.size(); ++i) path_ok &= g.range(p[i]).contains(g.source(p[i + 1]));
            if (distinct && path_ok) {
                std::vector<std::string> best;
                for (std::size_t r = 0; r < p.size(); ++r) {
                    std::vector<std::string> rot;
                    for (std::size_t i = 0; i < p.size(); ++i) rot.push_back(g.label(p[(r + i) % p.size()]));
                    if (best.empty() || rot < best) best = rot;
                }
                out.insert(best);
            }
        }
        if (p.size() == g.vertex_count()) return;
        for (EdgeId e : edges) {
            p.push_back(e);
            extend(p);
            p.pop_back();
        }
    };
    Path p;
    extend(p);
    return out;
}

}  // namespace

TEST_CASE("validation accepts the bundled graphs and rejects malformed ones") {
    for (const auto& name : bundled_names()) CHECK_NOTHROW(bundled(name));
    CHECK(kind_of([] { validate_ultragraph({{"v"}, {{"e", "v", {}}}}); }) == ErrorKind::EmptyRange);
    CHECK(kind_of([] { validate_ultragraph({{"v"}, {{"e", "z", {"v"}}}}); }) == ErrorKind::UnknownVertex);
    CHECK(kind_of([] { validate_ultragraph({{"v"}, {{"e", "v", {"z"}}}}); }) == ErrorKind::UnknownVertex);
    CHECK(kind_of([] { validate_ultragraph({{"v", "v"}, {}}); }) == ErrorKind::DuplicateLabel);
    CHECK(kind_of([] { validate_ultragraph({{"v"}, {{"e", "v", {"v"}}, {"e", "v", {"v"}}}}); }) ==
          ErrorKind::DuplicateLabel);
    CHECK(kind_of([] { validate_ultragraph({{"v"}, {{"v", "v", {"v"}}}}); }) == ErrorKind::DuplicateLabel);
}

TEST_CASE("lattice closure") {
    auto mix = bundled("G_MIX");
    auto lattice = lattice_closure(mix);
    std::vector<VertexSet> expected{VertexSet{}, vset(mix, {"v"}), vset(mix, {"w"}), vset(mix, {"v", "w"})};
    std::sort(expected.begin(), expected.end());
    CHECK(lattice == expected);

    auto single = validate_ultragraph({{"v"}, {}});
    CHECK(lattice_closure(single).size() == 2);

    CHECK(lattice_closure(bundled("G_ULTRA")).size() == 8);

    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        auto l = lattice_closure(g);
        std::set<unsigned> masks;
        for (const auto& s : l) {
            unsigned m = 0;
            for (VertexId v : s) m |= 1u << v.index;
            masks.insert(m);
        }
        CHECK(masks == lattice_oracle(g));
        for (const auto& a : l) {
            for (const auto& b : l) {
                CHECK(in_lattice(g, a.unite(b)));
                CHECK(in_lattice(g, a.intersect(b)));
            }
        }
        for (EdgeId e : g.edges()) CHECK(in_lattice(g, g.range(e)));
    }
}

TEST_CASE("every vertex subset of a finite ultragraph is a generalized vertex") {
    auto g = validate_ultragraph({{"u", "v", "w"}, {{"e", "u", {"v", "w"}}}});
    auto all = g.vertices();
    for (unsigned m = 0; m < 8; ++m) {
        std::vector<VertexId> members;
        for (unsigned i = 0; i < 3; ++i) {
            if (m & (1u << i)) members.push_back(all[i]);
        }
        CHECK(in_lattice(g, VertexSet(members)));
    }
    CHECK(kind_of([&] { vset(g, {"u", "z"}); }) == ErrorKind::UnknownVertex);
}

TEST_CASE("sinks") {
    auto mix = bundled("G_MIX");
    CHECK(sinks(mix) == vset(mix, {"w"}));
    CHECK(sinks(bundled("G_LOOP")).empty());
    auto single = validate_ultragraph({{"v"}, {}});
    CHECK(sinks(single) == vset(single, {"v"}));
}

TEST_CASE("cycles agree with exhaustive search") {
    auto loop = bundled("G_LOOP");
    CHECK(enumerate_cycles(loop) == std::vector<Path>{path(loop, {"e"})});
    CHECK(enumerate_cycles(bundled("G_CHAIN")).empty());
    auto ultra = bundled("G_ULTRA");
    CHECK(enumerate_cycles(ultra) == std::vector<Path>{path(ultra, {"e", "f"})});

    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        std::set<std::vector<std::string>> got;
        for (const auto& c : enumerate_cycles(g)) {
            CHECK(is_cycle(g, c));
            std::vector<std::string> labels;
            for (EdgeId e : c) labels.push_back(g.label(e));
            got.insert(labels);
        }
        CHECK(got == cycle_oracle(g));
    }
}

TEST_CASE("exits of closed paths") {
    auto mix = bundled("G_MIX");
    auto exits = exits_of_closed_path(mix, path(mix, {"e"}));
    REQUIRE(exits.size() == 1);
    CHECK(exits[0].kind == Exit::Kind::Sink);
    CHECK(exits[0].position == 1);
    CHECK(exits[0].sink == mix.vertex("w"));

    auto loop = bundled("G_LOOP");
    CHECK(exits_of_closed_path(loop, path(loop, {"e"})).empty());

    auto loop2 = bundled("G_LOOP2");
    exits = exits_of_closed_path(loop2, path(loop2, {"e"}));
    REQUIRE(exits.size() == 1);
    CHECK(exits[0].kind == Exit::Kind::Edge);
    CHECK(exits[0].position == 1);
    CHECK(exits[0].edge == loop2.edge("e2"));

    auto chain = bundled("G_CHAIN");
    CHECK(kind_of([&] { exits_of_closed_path(chain, path(chain, {"e"})); }) == ErrorKind::NotClosed);
}

TEST_CASE("condition (L) matches the exits of every cycle") {
    auto loop_result = satisfies_condition_L(bundled("G_LOOP"));
    CHECK_FALSE(loop_result.holds);
    REQUIRE(loop_result.witness);
    CHECK(loop_result.witness->size() == 1);
    CHECK(satisfies_condition_L(bundled("G_MIX")).holds);
    CHECK(satisfies_condition_L(bundled("G_CHAIN")).holds);

    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        bool expected = true;
        for (const auto& c : enumerate_cycles(g)) expected &= !exits_of_closed_path(g, c).empty();
        CHECK(satisfies_condition_L(g).holds == expected);
    }
}

TEST_CASE("primitive roots") {
    auto loop2 = bundled("G_LOOP2");
    CHECK(primitive_root(path(loop2, {"e", "e", "e"})) == path(loop2, {"e"}));
    CHECK(primitive_root(path(loop2, {"e", "e2", "e", "e2"})) == path(loop2, {"e", "e2"}));
    CHECK(primitive_root(path(loop2, {"e", "e2", "e"})) == path(loop2, {"e", "e2", "e"}));
}

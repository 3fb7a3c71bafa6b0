#include "oracle.hpp"
#include "support.hpp"
#include "ulpa/branching.hpp"
#include "ulpa/json_io.hpp"
#include "ulpa/permutative.hpp"
#include "ulpa/reduction.hpp"
#include "ulpa/sampling.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace ulpa;
using namespace ulpa::test;

namespace {

struct Verdict {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

const SampleOptions kCorpusOptions{4, 3, 3};
constexpr int kCorpusSize = 200;
constexpr std::uint64_t kCorpusSeed = 2024;

std::vector<ExprPtr> corpus(const Ultragraph& g) {
    return random_nonzero_corpus(SkewRing(g, Ring::rationals()), kCorpusSize, kCorpusSeed, kCorpusOptions);
}

FinSuppVector nonzero(const FinSuppVector& v) {
    FinSuppVector out;
    for (const auto& [p, c] : v) {
        if (c != 0) out.emplace(p, c);
    }
    return out;
}

Verdict relation_suite() {
    Verdict v;
    std::size_t checks = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        for (const auto& ring : {Ring::integers(), Ring::rationals(), Ring::integers_mod(5)}) {
            auto report = verify_relations(SkewRing(g, ring));
            checks += report.checks.size();
            if (auto failure = report.first_failure()) {
                v.fail(name + " over " + ring.name() + ": relation " + failure->relation + " at " + failure->instance);
            }
        }
    }
    if (v.passed) v.detail = std::to_string(checks) + " relation instances";
    return v;
}

Verdict nontriviality() {
    Verdict v;
    std::size_t checks = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        SkewRing k(g, Ring::rationals());
        for (const auto& a : lattice_closure(g)) {
            if (a.empty()) continue;
            ++checks;
            if (oracle_zero(g, k.ring(), phi_projection(k, a))) v.fail(name + ": p" + set_to_string(g, a) + " maps to 0");
        }
        for (EdgeId e : g.edges()) {
            checks += 2;
            if (oracle_zero(g, k.ring(), phi_edge(k, e))) v.fail(name + ": s(" + g.label(e) + ") maps to 0");
            if (oracle_zero(g, k.ring(), phi_ghost(k, e))) v.fail(name + ": s*(" + g.label(e) + ") maps to 0");
        }
    }
    if (v.passed) v.detail = std::to_string(checks) + " generators nonzero";
    return v;
}

Verdict reduction_theorem() {
    Verdict v;
    int sp = 0, cp = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        SkewRing k(g, Ring::rationals());
        for (const auto& e : corpus(g)) {
            auto x = eval_expression(k, *e);
            ReductionOutcome r;
            try {
                r = reduce(k, x);
            } catch (const std::exception& ex) {
                v.fail(name + ": reduce threw on " + print_expr(g, *e) + ": " + ex.what());
                continue;
            }
            auto w = apply_outcome(k, r, x);
            auto diff = k.sub(w, form_element(k, r.form));
            if (oracle_zero(g, k.ring(), w)) v.fail(name + ": μxν = 0 for " + print_expr(g, *e));
            if (!oracle_zero(g, k.ring(), diff) || !graded_is_zero(k, diff)) {
                v.fail(name + ": μxν differs from the reported form for " + print_expr(g, *e));
            }
            if (const auto* c = std::get_if<CyclePowers>(&r.form)) {
                ++cp;
                if (!exits_of_closed_path(g, c->cycle).empty()) v.fail(name + ": reported cycle has an exit");
            } else {
                ++sp;
            }
        }
    }
    if (v.passed) {
        v.detail = std::to_string(sp + cp) + " elements, " + std::to_string(sp) + " scalar projections and " +
                   std::to_string(cp) + " cycle sums";
    }
    return v;
}

Verdict semiprime() {
    Verdict v;
    int count = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        auto elements = corpus(g);
        for (const auto& ring : {Ring::integers(), Ring::rationals()}) {
            SkewRing k(g, ring);
            for (const auto& e : elements) {
                auto x = eval_expression(k, *e);
                if (oracle_zero(g, ring, x)) continue;
                auto r = reduce(k, x);
                auto w = apply_outcome(k, r, x);
                ++count;
                if (oracle_zero(g, ring, graded_multiply(k, w, w))) {
                    v.fail(name + " over " + ring.name() + ": (μxν)² = 0 for " + print_expr(g, *e));
                }
            }
        }
    }
    if (v.passed) v.detail = std::to_string(count) + " squares nonzero over z and q";
    return v;
}

// Some probe δ whose image under x is nonzero.
bool acts_nonzero(const Representation& rep, const Expr& x, const std::vector<Point>& probes) {
    for (const auto& p : probes) {
        if (!nonzero(rep.apply(x, {{p, Scalar(1)}})).empty()) return true;
    }
    return false;
}

Verdict faithfulness() {
    Verdict v;
    auto loop = bundled("G_LOOP");
    auto base = build_interval_system(loop);
    auto witness = kernel_witness(loop, base);
    if (!witness) {
        v.fail("no kernel witness for the interval system on G_LOOP");
    } else {
        if (print_expr(loop, *witness->expr) != "s(e) - p(v)") v.fail("unexpected witness " + print_expr(loop, *witness->expr));
        SkewRing k(loop, Ring::rationals());
        if (oracle_zero(loop, k.ring(), eval_expression(k, *witness->expr))) v.fail("witness is zero in the algebra");
        Representation rep(loop, base);
        auto probes = probe_points(loop, base);
        if (acts_nonzero(rep, *witness->expr, probes)) v.fail("witness acts nonzero on a probe");
    }

    auto rotated = build_rotation_variant(loop, base, 97);
    if (!check_faithfulness_criterion(loop, rotated, 50).faithful()) v.fail("rotation by 1/97 fails the criterion at 50");
    Representation rot(loop, rotated);
    auto rot_probes = probe_points(loop, rotated);
    int annihilated = 0;
    for (const auto& e : corpus(loop)) annihilated += !acts_nonzero(rot, *e, rot_probes);
    if (annihilated) v.fail(std::to_string(annihilated) + " G_LOOP corpus elements act as 0 under the rotation system");

    auto mix = bundled("G_MIX");
    auto bm = build_interval_system(mix);
    Representation rep_mix(mix, bm);
    auto mix_probes = probe_points(mix, bm);
    int lost = 0;
    for (const auto& e : corpus(mix)) lost += !acts_nonzero(rep_mix, *e, mix_probes);
    if (lost) v.fail(std::to_string(lost) + " G_MIX corpus elements act as 0");
    if (v.passed) v.detail = "kernel witness s(e) - p(v); rotation and G_MIX images nonzero on 400 elements";
    return v;
}

Verdict partial_action() {
    Verdict v;
    std::size_t checks = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        std::vector<FreeWord> words;
        for (const auto& t : admissible_words(g, 4)) {
            if (t.length() <= 4) words.push_back(t);
        }
        std::vector<SetExpr> generators;
        for (const auto& p : all_paths(g, 3)) {
            for (VertexId u : g.range_of(p)) generators.push_back(cylinder_from(g, p, VertexSet{u}));
        }
        for (const auto& s : generators) {
            ++checks;
            if (!set_equal(g, theta_apply(g, FreeWord{}, s), s)) v.fail(name + ": θ_0 moves " + to_string(g, s));
        }
        for (const auto& c : words) {
            auto x_c = x_set(g, c);
            auto x_c_inv = x_set(g, c.inverse());
            for (const auto& t : words) {
                FreeWord ct = c * t;
                bool ct_ok = word_admissible(g, ct);
                auto domain = ct_ok ? set_intersect(g, x_c, x_set(g, ct)) : SetExpr{};
                for (const auto& s : generators) {
                    ++checks;
                    auto lhs = theta_apply(g, c, set_intersect(g, x_c_inv, theta_apply(g, t, s)));
                    auto rhs = ct_ok ? set_intersect(g, domain, theta_apply(g, ct, s)) : SetExpr{};
                    if (!set_equal(g, lhs, rhs)) {
                        v.fail(name + ": θ_c∘θ_t ≠ θ_ct for c=" + to_string(g, c) + ", t=" + to_string(g, t) +
                               " on " + to_string(g, s));
                    }
                }
            }
        }
    }
    if (v.passed) v.detail = std::to_string(checks) + " set identities";
    return v;
}

Verdict stratification() {
    Verdict v;
    auto chain = bundled("G_CHAIN");
    auto s = stratify(chain);
    std::set<VertexSet> x1;
    if (!s.levels.empty()) {
        for (const auto& ev : s.levels[0].X) x1.insert(ev.set);
    }
    if (!s.covered) v.fail("G_CHAIN not covered");
    if (x1 != std::set<VertexSet>{vset(chain, {"v"}), vset(chain, {"w"})}) v.fail("G_CHAIN X_1 differs from {{v},{w}}");
    for (const char* name : {"G_LOOP", "G_MIX", "G_ULTRA"}) {
        if (stratify(bundled(name)).covered) v.fail(std::string(name) + " reported covered");
    }
    for (const char* name : {"G_CHAIN", "G_LOOP", "G_MIX", "G_ULTRA"}) {
        auto g = bundled(name);
        auto golden = Json::parse(slurp(data_path(std::string("golden/stratify_") + name + ".json")));
        auto got = stratification_json(g, stratify(g));
        for (const char* key : {"I0", "levels", "terminated", "covered"}) {
            if (got[key] != golden[key]) v.fail(std::string(name) + ": " + key + " differs from golden file");
        }
    }
    if (v.passed) v.detail = "G_CHAIN covered, others not; 4 golden files match";
    return v;
}

Verdict permutative_round_trip() {
    Verdict v;
    std::size_t checks = 0;
    struct Case {
        const char* graph;
        std::vector<Point> seeds;
    };
    const std::vector<Case> cases{
        {"G_CHAIN", {{Scalar(1, 3), "w"}, {Scalar(1, 3), "e"}}},
        {"G_MIX", {{Scalar(0), "e"}}},
    };
    for (const auto& c : cases) {
        auto g = bundled(c.graph);
        auto ds = restrict_to_points(g, build_interval_system(g), c.seeds);
        auto pd = pd_from_discrete(g, ds);
        auto transform = permutative_to_branching(g, pd);
        if (!transform.report.valid()) v.fail(std::string(c.graph) + ": transformed system fails the axioms");

        std::vector<ExprPtr> generators;
        for (const auto& a : lattice_closure(g)) generators.push_back(expr_projection(a));
        for (EdgeId e : g.edges()) {
            generators.push_back(expr_edge(e));
            generators.push_back(expr_ghost(e));
        }
        const auto& sys = transform.system;
        for (std::size_t x = 0; x < sys.points.size(); ++x) {
            for (const auto& gen : generators) {
                ++checks;
                // T(π(gen) δ_x) against φ(gen)(T δ_x).
                auto image = discrete_apply(g, sys, Ring::rationals(), *gen, {{static_cast<int>(x), Scalar(1)}});
                std::map<int, Scalar> lhs;
                for (const auto& [y, coef] : image) {
                    if (coef != 0) lhs[transform.T[static_cast<std::size_t>(y)]] += coef;
                }
                std::map<int, Scalar> rhs;
                if (auto y = permutative_generator_apply(g, pd, *gen, transform.T[x])) rhs[*y] = Scalar(1);
                if (lhs != rhs) v.fail(std::string(c.graph) + ": T does not intertwine at " + sys.points[x]);
            }
        }
    }
    if (v.passed) v.detail = std::to_string(checks) + " generator-basis pairs";
    return v;
}

// a·r·b for a defining relation r (which is zero) and random elements a, b.
ExprPtr relation_instance(const Ultragraph& g, Sampler& sampler, std::size_t which) {
    std::vector<ExprPtr> relations;
    for (VertexId v : g.vertices()) {
        if (g.is_sink(v)) continue;
        ExprPtr sum;
        for (EdgeId e : g.emitted(v)) {
            auto term = expr_mul(expr_edge(e), expr_ghost(e));
            sum = sum ? expr_add(sum, term) : term;
        }
        relations.push_back(expr_sub(expr_projection(VertexSet{v}), sum));
    }
    for (EdgeId e : g.edges()) {
        relations.push_back(expr_sub(expr_mul(expr_ghost(e), expr_edge(e)), expr_projection(g.range(e))));
        relations.push_back(expr_sub(expr_mul(expr_edge(e), expr_projection(g.range(e))), expr_edge(e)));
    }
    const auto& pick = relations[which % relations.size()];
    return expr_mul(sampler.random_element(), expr_mul(pick, sampler.random_element()));
}

Verdict oracle_cross_check() {
    Verdict v;
    int equal_pairs = 0, pairs = 0;
    for (const auto& name : bundled_names()) {
        auto g = bundled(name);
        SkewRing k(g, Ring::rationals());
        Sampler sampler(g, 99);
        for (int i = 0; i < 50; ++i) {
            auto x = sampler.random_element();
            ExprPtr y;
            switch (i % 3) {
                case 0: y = sampler.random_element(); break;
                case 1: y = expr_add(x, relation_instance(g, sampler, static_cast<std::size_t>(i))); break;
                default: y = sampler.random_expression(3); break;
            }
            auto ex = eval_expression(k, *x);
            auto ey = eval_expression(k, *y);
            bool fast = k.equal(ex, ey);
            bool slow = oracle_equal(g, k.ring(), ex, ey);
            ++pairs;
            equal_pairs += slow;
            if (fast != slow) v.fail(name + ": disagreement on " + print_expr(g, *x) + " vs " + print_expr(g, *y));
        }
    }
    if (v.passed) {
        v.detail = std::to_string(pairs) + " pairs agree (" + std::to_string(equal_pairs) + " equal)";
    }
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"relation suite", relation_suite},
        {"nontriviality", nontriviality},
        {"reduction theorem", reduction_theorem},
        {"semiprime", semiprime},
        {"faithfulness dichotomy", faithfulness},
        {"partial-action axioms", partial_action},
        {"stratification", stratification},
        {"permutative round trip", permutative_round_trip},
        {"oracle cross-check", oracle_cross_check},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Verdict verdict;
        try {
            verdict = criteria[i].second();
        } catch (const std::exception& e) {
            verdict.fail(std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !verdict.passed;
        std::cout << "criterion " << i + 1 << " " << (verdict.passed ? "PASS" : "FAIL") << ": " << criteria[i].first
                  << " (" << verdict.detail << "; " << std::fixed << std::setprecision(2) << seconds << " s)\n";
    }
    return failures == 0 ? 0 : 1;
}

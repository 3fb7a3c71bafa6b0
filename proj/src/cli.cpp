#include "ulpa/cli.hpp"

#include "ulpa/branching.hpp"
#include "ulpa/error.hpp"
#include "ulpa/json_io.hpp"
#include "ulpa/leavitt.hpp"
#include "ulpa/parse.hpp"
#include "ulpa/permutative.hpp"
#include "ulpa/reduction.hpp"
#include "ulpa/ultragraph.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace ulpa::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::InvalidSystem, path + ": " + e.what());
    }
}

Json tagged(const std::string& command) { return Json{{"schema", "ulpa." + command + "/1"}}; }

Point parse_point(const std::string& text) {
    auto at = text.find('@');
    if (at == std::string::npos || at == 0 || at + 1 == text.size()) {
        throw Error(ErrorKind::InvalidArgument, "expected a point q@label, got '" + text + "'");
    }
    return {parse_rational(text.substr(0, at)), text.substr(at + 1)};
}

Json sets_json(const Ultragraph& g, const std::vector<VertexSet>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(set_json(g, s));
    return out;
}

struct Options {
    std::string ring = "q";
    std::string graph;
    std::string expr;
    std::string other;
    std::string document;
    std::optional<int> rotation;
    std::optional<int> n_max;
    std::vector<std::string> deltas;
};

struct Context {
    Ultragraph g;
    Ring ring;
};

Json cmd_validate(const Context& c) {
    Json out = tagged("validate");
    out["valid"] = true;
    out["vertices"] = c.g.vertex_count();
    out["edges"] = c.g.edge_count();
    out["sinks"] = set_json(c.g, sinks(c.g));
    out["dsl"] = print_ultragraph_dsl(c.g);
    return out;
}

Json cmd_lattice(const Context& c) {
    Json out = tagged("lattice");
    out["sets"] = sets_json(c.g, lattice_closure(c.g));
    return out;
}

Json cmd_condition_l(const Context& c) {
    auto result = satisfies_condition_L(c.g);
    Json out = tagged("condition-L");
    out["conditionL"] = result.holds;
    out["witness"] = result.witness ? path_json(c.g, *result.witness) : Json(nullptr);
    Json cycles = Json::array();
    for (const auto& cycle : enumerate_cycles(c.g)) {
        Json exits = Json::array();
        for (const auto& ex : exits_of_closed_path(c.g, cycle)) {
            if (ex.kind == Exit::Kind::Edge) {
                exits.push_back(Json{{"position", ex.position}, {"edge", c.g.label(ex.edge)}});
            } else {
                exits.push_back(Json{{"position", ex.position}, {"sink", c.g.label(ex.sink)}});
            }
        }
        cycles.push_back(Json{{"cycle", path_json(c.g, cycle)}, {"exits", exits}});
    }
    out["cycles"] = cycles;
    return out;
}

Json cmd_relations(const Context& c) {
    SkewRing k(c.g, c.ring);
    auto report = verify_relations(k);
    Json out = tagged("relations");
    out["ring"] = c.ring.name();
    out["passed"] = report.all_passed();
    std::map<std::string, int> counts;
    for (const auto& check : report.checks) counts[check.relation] += 1;
    out["instances"] = counts;
    if (auto failure = report.first_failure()) {
        out["failure"] = Json{{"relation", failure->relation}, {"instance", failure->instance}};
    }
    return out;
}

GradedElement element(const Context& c, const SkewRing& k, const std::string& text) {
    return eval_expression(k, *parse_element_expr(c.g, text, c.ring));
}

Json outcome_json(const Ultragraph& g, const ReductionOutcome& r) {
    return Json{{"mu", factor_seq_json(g, r.mu)}, {"nu", factor_seq_json(g, r.nu)}, {"form", form_json(g, r.form)}};
}

Json cmd_reduce(const Context& c, const Options& o) {
    SkewRing k(c.g, c.ring);
    auto outcome = reduce(k, element(c, k, o.expr));
    Json out = tagged("reduce");
    out.update(outcome_json(c.g, outcome));
    return out;
}

Json cmd_eq(const Context& c, const Options& o) {
    SkewRing k(c.g, c.ring);
    Json out = tagged("eq");
    out["equal"] = k.equal(element(c, k, o.expr), element(c, k, o.other));
    return out;
}

Json cmd_semiprime(const Context& c, const Options& o) {
    SkewRing k(c.g, c.ring);
    auto witness = semiprime_square_witness(k, element(c, k, o.expr));
    Json out = tagged("semiprime");
    out.update(outcome_json(c.g, witness.outcome));
    out["w"] = k.to_string(witness.w);
    out["square"] = k.to_string(witness.square);
    out["squareNonzero"] = !k.is_zero(witness.square);
    return out;
}

Json cmd_bs_build(const Context& c, const Options& o) {
    auto bs = build_interval_system(c.g);
    if (o.rotation) bs = build_rotation_variant(c.g, bs, *o.rotation);
    return branching_to_json(c.g, bs);
}

Json cmd_bs_validate(const Context& c, const Options& o) {
    auto bs = branching_from_json(c.g, read_json(o.document));
    Json out = tagged("bs-validate");
    out.update(branching_report_json(validate_branching(c.g, bs)));
    return out;
}

Json cmd_bs_apply(const Context& c, const Options& o) {
    auto bs = branching_from_json(c.g, read_json(o.document));
    FinSuppVector phi;
    for (const auto& d : o.deltas) {
        Point p = parse_point(d);
        phi[p] = c.ring.add(phi[p], c.ring.one());
    }
    auto result = rep_apply(c.g, bs, *parse_element_expr(c.g, o.expr, c.ring), phi, c.ring);
    Json terms = Json::array();
    for (const auto& [p, coef] : result) {
        if (!c.ring.is_zero(coef)) terms.push_back(Json{{"point", to_string(p)}, {"coef", scalar_json(coef)}});
    }
    Json out = tagged("bs-apply");
    out["result"] = terms;
    return out;
}

Json cmd_bs_faithful(const Context& c, const Options& o) {
    auto bs = branching_from_json(c.g, read_json(o.document));
    auto verdict = check_faithfulness_criterion(c.g, bs, *o.n_max);
    Json cycles = Json::array();
    for (const auto& cv : verdict.cycles) {
        Json entry{{"cycle", path_json(c.g, cv.cycle)}};
        entry["witness"] = cv.witness ? point_json(*cv.witness) : Json(nullptr);
        entry["j0"] = cv.j0 ? Json(*cv.j0) : Json(nullptr);
        cycles.push_back(entry);
    }
    Json out = tagged("bs-faithful");
    out["nmax"] = verdict.n_max;
    out["criterion"] = verdict.faithful();
    out["exitlessCycles"] = cycles;
    if (auto w = kernel_witness(c.g, bs, *o.n_max)) {
        out["kernelWitness"] = Json{{"expr", print_expr(c.g, *w->expr)},
                                    {"algebraNonzero", w->algebra_nonzero},
                                    {"representationZero", w->representation_zero},
                                    {"probes", w->probes}};
    }
    return out;
}

Json cmd_stratify(const Context& c) {
    auto report = esteaqui_hypothesis(c.g);
    Json out = tagged("stratify");
    out.update(stratification_json(c.g, report.stratification));
    out["hypothesisHolds"] = report.holds;
    return out;
}

Json cmd_perm_to_bs(const Context& c, const Options& o) {
    auto pd = permutative_from_json(c.g, read_json(o.document));
    auto transform = permutative_to_branching(c.g, pd);
    Json t = Json::object();
    for (std::size_t x = 0; x < transform.T.size(); ++x) {
        t[transform.system.points[x]] = pd.B[static_cast<std::size_t>(transform.T[x])];
    }
    Json out = tagged("perm-to-bs");
    out["system"] = discrete_to_json(c.g, transform.system);
    out["T"] = t;
    out["report"] = branching_report_json(transform.report);
    out["checks"] = transform.checks;
    out["intertwines"] = transform.intertwines;
    return out;
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"schema", "ulpa.error/1"}, {"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations in ultragraph Leavitt path algebras", "ulpa"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--ring", o.ring, "Coefficient ring: z, q or zmod:<n>")->capture_default_str();

    using Handler = std::function<Json(const Context&)>;
    std::map<const CLI::App*, Handler> handlers;
    auto command = [&](const std::string& name, const std::string& help, Handler h) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("graph", o.graph, "Ultragraph file (.ug)")->required();
        handlers[sub] = std::move(h);
        return sub;
    };

    command("validate", "Parse and validate an ultragraph", cmd_validate);
    command("lattice", "List the generalized vertices", cmd_lattice);
    command("condition-L", "Decide whether every closed path has an exit", cmd_condition_l);
    command("relations", "Verify the defining relations in the skew group ring model", cmd_relations);
    command("reduce", "Run the reduction procedure on an element", [&](const Context& c) { return cmd_reduce(c, o); })
        ->add_option("expr", o.expr, "Element expression")
        ->required();
    auto* eq = command("eq", "Decide equality of two elements", [&](const Context& c) { return cmd_eq(c, o); });
    eq->add_option("lhs", o.expr, "Element expression")->required();
    eq->add_option("rhs", o.other, "Element expression")->required();
    command("semiprime", "Exhibit w = μxν with w² ≠ 0", [&](const Context& c) { return cmd_semiprime(c, o); })
        ->add_option("expr", o.expr, "Element expression")
        ->required();
    command("bs-build", "Build the interval branching system", [&](const Context& c) { return cmd_bs_build(c, o); })
        ->add_option("--rotation", o.rotation, "Rotate exitless cycles by 1/q")
        ->check(CLI::PositiveNumber);
    command("bs-validate", "Check the branching system axioms",
            [&](const Context& c) { return cmd_bs_validate(c, o); })
        ->add_option("system", o.document, "Branching system (.bs.json)")
        ->required();
    auto* apply = command("bs-apply", "Apply an element to a finitely supported vector",
                          [&](const Context& c) { return cmd_bs_apply(c, o); });
    apply->add_option("system", o.document, "Branching system (.bs.json)")->required();
    apply->add_option("expr", o.expr, "Element expression")->required();
    apply->add_option("--delta", o.deltas, "Basis vector δ at q@label; repeatable")->required();
    auto* faithful = command("bs-faithful", "Check the faithfulness criterion up to a power bound",
                             [&](const Context& c) { return cmd_bs_faithful(c, o); });
    faithful->add_option("system", o.document, "Branching system (.bs.json)")->required();
    faithful->add_option("--nmax", o.n_max, "Largest power checked")->required()->check(CLI::PositiveNumber);
    command("stratify", "Compute the extreme-vertex stratification", cmd_stratify);
    command("perm-to-bs", "Turn permutative data into a branching system",
            [&](const Context& c) { return cmd_perm_to_bs(c, o); })
        ->add_option("data", o.document, "Permutative data (.pd.json)")
        ->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ulpa: " << e.what() << "\n" << "Run with --help for usage.\n";
        return kExitUsage;
    }

    std::optional<Ring> ring;
    try {
        ring = Ring::parse(o.ring);
    } catch (const Error& e) {
        err << "ulpa: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        Context context{parse_ultragraph_dsl(read_file(o.graph)), *ring};
        const CLI::App* chosen = app.get_subcommands().front();
        out << handlers.at(chosen)(context).dump(2) << "\n";
        return kExitOk;
    } catch (const IoError& e) {
        err << "ulpa: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::string kind(to_string(e.kind()));
        std::string message = e.what();
        if (message.rfind(kind + ": ", 0) == 0) message.erase(0, kind.size() + 2);
        out << error_json(kind, message).dump(2) << "\n";
        return kExitDomainError;
    }
}

}  // namespace ulpa::cli

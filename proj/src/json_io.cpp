#include "ulpa/json_io.hpp"

#include "ulpa/error.hpp"

#include <algorithm>

namespace ulpa {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::InvalidSystem, "malformed document: " + what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
    return j.at(key);
}

Json interval_json(const Interval& i) {
    return Json{{"label", i.label}, {"interval", Json::array({scalar_json(i.lo), scalar_json(i.hi)})}};
}

Interval interval_from_json(const Json& j) {
    const Json& bounds = member(j, "interval");
    const Json& label = member(j, "label");
    if (!bounds.is_array() || bounds.size() != 2 || !label.is_string()) malformed("interval");
    return Interval::make(scalar_from_json(bounds[0]), scalar_from_json(bounds[1]), label.get<std::string>());
}

Json region_json(const Region& r) {
    Json out = Json::array();
    for (const auto& i : r.intervals()) out.push_back(interval_json(i));
    return out;
}

Region region_from_json(const Json& j) {
    if (!j.is_array()) malformed("region must be an array");
    Region r;
    for (const auto& item : j) r.add(interval_from_json(item));
    return r;
}

// "v" or "{v,w}".
VertexSet vertex_set_key(const Ultragraph& g, const std::string& key) {
    if (key.empty() || key.front() != '{') return VertexSet{g.vertex(key)};
    if (key.back() != '}') malformed("vertex set key '" + key + "'");
    std::vector<VertexId> members;
    std::string body = key.substr(1, key.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string::npos) comma = body.size();
        std::string item = body.substr(start, comma - start);
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) members.push_back(g.vertex(item));
        start = comma + 1;
    }
    return VertexSet(std::move(members));
}

int basis_index(const std::vector<std::string>& labels, const Json& j) {
    if (!j.is_string()) malformed("basis labels must be strings");
    auto it = std::find(labels.begin(), labels.end(), j.get<std::string>());
    if (it == labels.end()) malformed("unknown basis label '" + j.get<std::string>() + "'");
    return static_cast<int>(it - labels.begin());
}

std::set<int> basis_set(const std::vector<std::string>& labels, const Json& j) {
    if (!j.is_array()) malformed("basis subsets must be arrays");
    std::set<int> out;
    for (const auto& item : j) out.insert(basis_index(labels, item));
    return out;
}

}  // namespace

Json scalar_json(const Scalar& q) { return Ring::to_string(q); }

Scalar scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(ErrorKind::InvalidScalar, "expected a rational string, got " + j.dump());
}

Json path_json(const Ultragraph& g, const Path& p) {
    Json out = Json::array();
    for (EdgeId e : p) out.push_back(g.label(e));
    return out;
}

Json set_json(const Ultragraph& g, const VertexSet& s) {
    Json out = Json::array();
    for (VertexId v : s) out.push_back(g.label(v));
    return out;
}

Json point_json(const Point& p) { return Json{{"q", scalar_json(p.q)}, {"label", p.label}}; }

Json factor_seq_json(const Ultragraph& g, const FactorSeq& seq) {
    Json out = Json::array();
    for (const auto& f : seq) out.push_back(to_string(g, f));
    return out;
}

Json form_json(const Ultragraph& g, const ReducedForm& form) {
    if (const auto* sp = std::get_if<ScalarProjection>(&form)) {
        return Json{{"kind", "ScalarProjection"}, {"lambda", scalar_json(sp->lambda)}, {"A", set_json(g, sp->set)}};
    }
    const auto& cp = std::get<CyclePowers>(form);
    Json coeffs = Json::object();
    for (const auto& [m, lambda] : cp.coeffs) coeffs[std::to_string(m)] = scalar_json(lambda);
    return Json{{"kind", "CyclePowers"}, {"cycle", path_json(g, cp.cycle)}, {"coeffs", coeffs}};
}

Json graded_json(const SkewRing& k, const GradedElement& x) {
    Json out = Json::array();
    for (const auto& [t, f] : k.canonical(x)) {
        Json terms = Json::array();
        for (const auto& [c, v] : f) {
            terms.push_back(Json{{"prefix", path_json(k.graph(), c.prefix)},
                                 {"next", k.graph().label(c.next)},
                                 {"coef", scalar_json(v)}});
        }
        out.push_back(Json{{"word", to_string(k.graph(), t)}, {"terms", terms}});
    }
    return out;
}

Json branching_to_json(const Ultragraph& g, const BranchingSystem& bs) {
    Json R = Json::object();
    for (const auto& [e, r] : bs.R) R[g.label(e)] = region_json(r);
    Json D = Json::object();
    for (const auto& [a, d] : bs.D) {
        D[a.size() == 1 ? g.label(*a.begin()) : set_to_string(g, a)] = region_json(d);
    }
    Json f = Json::object();
    for (const auto& [e, map] : bs.f) {
        Json pieces = Json::array();
        for (const auto& p : map.pieces()) {
            pieces.push_back(Json{{"src", interval_json(p.src)},
                                  {"dst", interval_json(p.dst)},
                                  {"scale", scalar_json(p.scale)},
                                  {"offset", scalar_json(p.offset)}});
        }
        f[g.label(e)] = pieces;
    }
    return Json{{"schema", kBranchingSchema}, {"R", R}, {"D", D}, {"f", f}};
}

BranchingSystem branching_from_json(const Ultragraph& g, const Json& j) {
    if (j.contains("schema") && j.at("schema") != kBranchingSchema) malformed("unsupported schema " + j.at("schema").dump());
    BranchingSystem bs;
    for (const auto& [label, region] : member(j, "R").items()) bs.R[g.edge(label)] = region_from_json(region);
    for (const auto& [key, region] : member(j, "D").items()) bs.D[vertex_set_key(g, key)] = region_from_json(region);
    for (const auto& [label, pieces] : member(j, "f").items()) {
        if (!pieces.is_array()) malformed("f entries must be arrays");
        std::vector<AffinePiece> out;
        for (const auto& p : pieces) {
            out.push_back(AffinePiece{interval_from_json(member(p, "src")), interval_from_json(member(p, "dst")),
                                      scalar_from_json(member(p, "scale")), scalar_from_json(member(p, "offset"))});
        }
        bs.f[g.edge(label)] = PiecewiseMap(std::move(out));
    }
    return bs;
}

Json permutative_to_json(const Ultragraph& g, const PermutativeData& pd) {
    auto labels = [&](const std::set<int>& s) {
        Json out = Json::array();
        for (int x : s) out.push_back(pd.B[static_cast<std::size_t>(x)]);
        return out;
    };
    Json bv = Json::object();
    for (const auto& [v, s] : pd.B_v) bv[g.label(v)] = labels(s);
    Json be = Json::object();
    for (const auto& [e, s] : pd.B_e) be[g.label(e)] = labels(s);
    Json maps = Json::object();
    for (const auto& [e, m] : pd.edge_maps) {
        Json entry = Json::object();
        for (const auto& [from, to] : m) entry[pd.B[static_cast<std::size_t>(from)]] = pd.B[static_cast<std::size_t>(to)];
        maps[g.label(e)] = entry;
    }
    return Json{{"schema", kPermutativeSchema}, {"B", pd.B}, {"B_v", bv}, {"B_e", be}, {"edge_maps", maps}};
}

PermutativeData permutative_from_json(const Ultragraph& g, const Json& j) {
    if (j.contains("schema") && j.at("schema") != kPermutativeSchema) malformed("unsupported schema " + j.at("schema").dump());
    PermutativeData pd;
    const Json& b = member(j, "B");
    if (!b.is_array()) malformed("B must be an array");
    for (const auto& item : b) {
        if (!item.is_string()) malformed("basis labels must be strings");
        pd.B.push_back(item.get<std::string>());
    }
    for (VertexId v : g.vertices()) pd.B_v[v];
    for (EdgeId e : g.edges()) {
        pd.B_e[e];
        pd.edge_maps[e];
    }
    for (const auto& [label, s] : member(j, "B_v").items()) pd.B_v[g.vertex(label)] = basis_set(pd.B, s);
    for (const auto& [label, s] : member(j, "B_e").items()) pd.B_e[g.edge(label)] = basis_set(pd.B, s);
    for (const auto& [label, m] : member(j, "edge_maps").items()) {
        if (!m.is_object()) malformed("edge maps must be objects");
        auto& out = pd.edge_maps[g.edge(label)];
        for (const auto& [from, to] : m.items()) out[basis_index(pd.B, Json(from))] = basis_index(pd.B, to);
    }
    return pd;
}

Json discrete_to_json(const Ultragraph& g, const DiscreteSystem& ds) {
    auto names = [&](const std::set<int>& s) {
        Json out = Json::array();
        for (int x : s) out.push_back(ds.points[static_cast<std::size_t>(x)]);
        return out;
    };
    Json R = Json::object();
    for (const auto& [e, s] : ds.R) R[g.label(e)] = names(s);
    Json D = Json::object();
    for (const auto& [v, s] : ds.D) D[g.label(v)] = names(s);
    Json f = Json::object();
    for (const auto& [e, m] : ds.f) {
        Json entry = Json::object();
        for (const auto& [x, y] : m) entry[ds.points[static_cast<std::size_t>(x)]] = ds.points[static_cast<std::size_t>(y)];
        f[g.label(e)] = entry;
    }
    return Json{{"points", ds.points}, {"R", R}, {"D", D}, {"f", f}};
}

Json branching_report_json(const BranchingReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json entry{{"axiom", c.axiom}, {"passed", c.passed}};
        if (!c.passed) entry["detail"] = c.detail;
        checks.push_back(entry);
    }
    return Json{{"valid", report.valid()}, {"nonemptyD", report.nonempty_d}, {"checks", checks}};
}

Json stratification_json(const Ultragraph& g, const Stratification& s) {
    Json levels = Json::array();
    for (const auto& level : s.levels) {
        Json x = Json::array();
        for (const auto& ev : level.X) {
            x.push_back(Json{{"A", set_json(g, ev.set)},
                             {"edge", g.label(ev.edge)},
                             {"kind", ev.kind == ExtremeVertex::Kind::Final ? "final" : "initial"}});
        }
        Json y = Json::array();
        for (EdgeId e : level.Y) y.push_back(g.label(e));
        levels.push_back(Json{{"X", x}, {"Y", y}, {"Xbar", set_json(g, level.X_bar)}, {"I", set_json(g, level.I)}});
    }
    return Json{{"I0", set_json(g, s.I0)}, {"levels", levels}, {"terminated", s.terminated}, {"covered", s.covered}};
}

}  // namespace ulpa

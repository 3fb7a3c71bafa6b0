#include "ulpa/ultragraph.hpp"

#include "ulpa/error.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace ulpa {

VertexSet::VertexSet(std::initializer_list<VertexId> members) : VertexSet(std::vector<VertexId>(members)) {}

VertexSet::VertexSet(std::vector<VertexId> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

VertexSet VertexSet::unite(const VertexSet& other) const {
    std::vector<VertexId> out;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    VertexSet s;
    s.members_ = std::move(out);
    return s;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
    std::vector<VertexId> out;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    VertexSet s;
    s.members_ = std::move(out);
    return s;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
    std::vector<VertexId> out;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    VertexSet s;
    s.members_ = std::move(out);
    return s;
}

bool VertexSet::subset_of(const VertexSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
}

std::vector<VertexId> Ultragraph::vertices() const {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < vertex_labels_.size(); ++i) out.push_back(VertexId{static_cast<int>(i)});
    return out;
}

std::vector<EdgeId> Ultragraph::edges() const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < edge_labels_.size(); ++i) out.push_back(EdgeId{static_cast<int>(i)});
    return out;
}

VertexSet Ultragraph::all_vertices() const { return VertexSet(vertices()); }

std::optional<VertexId> Ultragraph::find_vertex(std::string_view label) const {
    auto it = vertex_index_.find(std::string(label));
    if (it == vertex_index_.end()) return std::nullopt;
    return VertexId{it->second};
}

std::optional<EdgeId> Ultragraph::find_edge(std::string_view label) const {
    auto it = edge_index_.find(std::string(label));
    if (it == edge_index_.end()) return std::nullopt;
    return EdgeId{it->second};
}

VertexId Ultragraph::vertex(std::string_view label) const {
    if (auto v = find_vertex(label)) return *v;
    throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(label) + "'");
}

EdgeId Ultragraph::edge(std::string_view label) const {
    if (auto e = find_edge(label)) return *e;
    throw Error(ErrorKind::UnknownEdge, "unknown edge '" + std::string(label) + "'");
}

bool Ultragraph::is_path(const Path& p) const {
    for (EdgeId e : p) {
        if (e.index < 0 || static_cast<std::size_t>(e.index) >= edge_count()) return false;
    }
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (!range(p[i - 1]).contains(source(p[i]))) return false;
    }
    return true;
}

VertexSet Ultragraph::range_of(const Path& p) const { return p.empty() ? all_vertices() : range(p.back()); }

RawUltragraph Ultragraph::raw() const {
    RawUltragraph raw;
    raw.vertices = vertex_labels_;
    for (EdgeId e : edges()) {
        RawUltragraph::Edge edge{label(e), label(source(e)), {}};
        for (VertexId v : range(e)) edge.range.push_back(label(v));
        raw.edges.push_back(std::move(edge));
    }
    return raw;
}

Ultragraph validate_ultragraph(const RawUltragraph& raw) {
    static const std::regex label_pattern("[A-Za-z_][A-Za-z0-9_]*");
    Ultragraph g;
    std::set<std::string> seen;
    auto claim = [&](const std::string& label) {
        if (!std::regex_match(label, label_pattern)) {
            throw Error(ErrorKind::InvalidArgument, "malformed label '" + label + "'");
        }
        if (!seen.insert(label).second) throw Error(ErrorKind::DuplicateLabel, "label '" + label + "' declared twice");
    };
    for (const auto& v : raw.vertices) {
        claim(v);
        g.vertex_index_[v] = static_cast<int>(g.vertex_labels_.size());
        g.vertex_labels_.push_back(v);
    }
    g.emitted_.resize(g.vertex_labels_.size());
    for (const auto& edge : raw.edges) {
        claim(edge.label);
        if (edge.range.empty()) throw Error(ErrorKind::EmptyRange, "edge '" + edge.label + "' has an empty range");
        EdgeId id{static_cast<int>(g.edge_labels_.size())};
        VertexId src = g.vertex(edge.source);
        std::vector<VertexId> range;
        for (const auto& r : edge.range) range.push_back(g.vertex(r));
        g.edge_index_[edge.label] = id.index;
        g.edge_labels_.push_back(edge.label);
        g.source_.push_back(src);
        g.range_.emplace_back(std::move(range));
        g.emitted_[static_cast<std::size_t>(src.index)].push_back(id);
    }
    return g;
}

std::vector<VertexSet> lattice_closure(const Ultragraph& g) {
    std::set<VertexSet> closure;
    closure.insert(VertexSet{});
    for (VertexId v : g.vertices()) closure.insert(VertexSet{v});
    for (EdgeId e : g.edges()) closure.insert(g.range(e));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<VertexSet> current(closure.begin(), closure.end());
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                grew |= closure.insert(current[i].unite(current[j])).second;
                grew |= closure.insert(current[i].intersect(current[j])).second;
            }
        }
    }
    return {closure.begin(), closure.end()};
}

bool in_lattice(const Ultragraph& g, const VertexSet& a) {
    // Singletons are generators and the lattice is closed under finite unions,
    // so for a finite ultragraph every subset of the vertices is a member.
    for (VertexId v : a) {
        if (v.index < 0 || static_cast<std::size_t>(v.index) >= g.vertex_count()) return false;
    }
    return true;
}

void require_in_lattice(const Ultragraph& g, const VertexSet& a) {
    if (!in_lattice(g, a)) throw Error(ErrorKind::SetNotInLattice, "vertex set is not a generalized vertex");
}

VertexSet sinks(const Ultragraph& g) {
    std::vector<VertexId> out;
    for (VertexId v : g.vertices()) {
        if (g.is_sink(v)) out.push_back(v);
    }
    return VertexSet(std::move(out));
}

bool is_closed_path(const Ultragraph& g, const Path& p) {
    return !p.empty() && g.is_path(p) && g.range(p.back()).contains(g.source(p.front()));
}

bool is_cycle(const Ultragraph& g, const Path& p) {
    if (!is_closed_path(g, p)) return false;
    std::set<VertexId> sources;
    for (EdgeId e : p) {
        if (!sources.insert(g.source(e)).second) return false;
    }
    return true;
}

Path primitive_root(const Path& p) {
    const std::size_t n = p.size();
    for (std::size_t period = 1; period < n; ++period) {
        if (n % period != 0) continue;
        bool ok = true;
        for (std::size_t i = period; i < n && ok; ++i) ok = p[i] == p[i - period];
        if (ok) return Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(period));
    }
    return p;
}

namespace {

std::vector<std::string> labels_of(const Ultragraph& g, const Path& p) {
    std::vector<std::string> out;
    for (EdgeId e : p) out.push_back(g.label(e));
    return out;
}

Path least_rotation(const Ultragraph& g, const Path& p) {
    Path best = p;
    auto best_labels = labels_of(g, p);
    for (std::size_t k = 1; k < p.size(); ++k) {
        Path rotated(p.begin() + static_cast<std::ptrdiff_t>(k), p.end());
        rotated.insert(rotated.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
        auto labels = labels_of(g, rotated);
        if (labels < best_labels) {
            best = std::move(rotated);
            best_labels = std::move(labels);
        }
    }
    return best;
}

void extend_cycles(const Ultragraph& g, Path& current, std::set<VertexId>& used, std::set<Path>& found) {
    const VertexId start = g.source(current.front());
    if (g.range(current.back()).contains(start)) found.insert(least_rotation(g, current));
    for (VertexId next : g.range(current.back())) {
        if (used.count(next)) continue;
        for (EdgeId e : g.emitted(next)) {
            current.push_back(e);
            used.insert(next);
            extend_cycles(g, current, used, found);
            used.erase(next);
            current.pop_back();
        }
    }
}

}  // namespace

std::vector<Path> enumerate_cycles(const Ultragraph& g) {
    std::set<Path> found;
    for (EdgeId e : g.edges()) {
        Path current{e};
        std::set<VertexId> used{g.source(e)};
        extend_cycles(g, current, used, found);
    }
    std::vector<Path> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return labels_of(g, a) < labels_of(g, b);
    });
    return out;
}

std::vector<Exit> exits_of_closed_path(const Ultragraph& g, const Path& p) {
    if (!is_closed_path(g, p)) {
        throw Error(ErrorKind::NotClosed, "path '" + path_to_string(g, p) + "' is not closed");
    }
    std::vector<Exit> exits;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const EdgeId following = p[(i + 1) % p.size()];
        const int position = static_cast<int>(i) + 1;
        for (VertexId u : g.range(p[i])) {
            if (g.is_sink(u)) {
                exits.push_back(Exit{Exit::Kind::Sink, position, EdgeId{}, u});
                continue;
            }
            for (EdgeId e : g.emitted(u)) {
                if (e != following) exits.push_back(Exit{Exit::Kind::Edge, position, e, VertexId{}});
            }
        }
    }
    return exits;
}

ConditionLResult satisfies_condition_L(const Ultragraph& g) {
    for (const Path& c : enumerate_cycles(g)) {
        if (exits_of_closed_path(g, c).empty()) return ConditionLResult{false, c};
    }
    return {};
}

std::string path_to_string(const Ultragraph& g, const Path& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += g.label(p[i]);
    }
    return out;
}

std::string set_to_string(const Ultragraph& g, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    for (VertexId v : s) {
        if (!first) out += ",";
        out += g.label(v);
        first = false;
    }
    return out + "}";
}

}  // namespace ulpa

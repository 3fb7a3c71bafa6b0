#ifndef ULPA_ULTRAGRAPH_HPP
#define ULPA_ULTRAGRAPH_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ulpa {

struct VertexId {
    int index = -1;
    auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
    int index = -1;
    auto operator<=>(const EdgeId&) const = default;
};

// An explicit finite set of vertices, kept sorted and duplicate free.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<VertexId> members);
    explicit VertexSet(std::vector<VertexId> members);

    bool contains(VertexId v) const;
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const std::vector<VertexId>& members() const { return members_; }

    VertexSet unite(const VertexSet& other) const;
    VertexSet intersect(const VertexSet& other) const;
    VertexSet minus(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const { return !intersect(other).empty(); }
    bool subset_of(const VertexSet& other) const;

    auto operator<=>(const VertexSet&) const = default;

private:
    std::vector<VertexId> members_;
};

using Path = std::vector<EdgeId>;

// Unvalidated description of an ultragraph, as read from the DSL.
struct RawUltragraph {
    struct Edge {
        std::string label;
        std::string source;
        std::vector<std::string> range;
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
};

// A finite ultragraph with interned labels. Immutable once constructed;
// the only way to obtain one is validate_ultragraph.
class Ultragraph {
public:
    std::size_t vertex_count() const { return vertex_labels_.size(); }
    std::size_t edge_count() const { return edge_labels_.size(); }
    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;
    VertexSet all_vertices() const;

    const std::string& label(VertexId v) const { return vertex_labels_.at(static_cast<std::size_t>(v.index)); }
    const std::string& label(EdgeId e) const { return edge_labels_.at(static_cast<std::size_t>(e.index)); }

    std::optional<VertexId> find_vertex(std::string_view label) const;
    std::optional<EdgeId> find_edge(std::string_view label) const;
    VertexId vertex(std::string_view label) const;  // throws UnknownVertex
    EdgeId edge(std::string_view label) const;      // throws UnknownEdge

    VertexId source(EdgeId e) const { return source_.at(static_cast<std::size_t>(e.index)); }
    const VertexSet& range(EdgeId e) const { return range_.at(static_cast<std::size_t>(e.index)); }
    // s^{-1}(v) in declaration order.
    const std::vector<EdgeId>& emitted(VertexId v) const { return emitted_.at(static_cast<std::size_t>(v.index)); }
    bool is_sink(VertexId v) const { return emitted(v).empty(); }

    // Consecutive edges satisfy s(e_{i+1}) in r(e_i). The empty path is valid.
    bool is_path(const Path& p) const;
    // r(p) for nonempty p; the full vertex set for the empty path.
    VertexSet range_of(const Path& p) const;

    RawUltragraph raw() const;

    friend Ultragraph validate_ultragraph(const RawUltragraph& raw);

private:
    Ultragraph() = default;

    std::vector<std::string> vertex_labels_;
    std::vector<std::string> edge_labels_;
    std::unordered_map<std::string, int> vertex_index_;
    std::unordered_map<std::string, int> edge_index_;
    std::vector<VertexId> source_;
    std::vector<VertexSet> range_;
    std::vector<std::vector<EdgeId>> emitted_;
};

Ultragraph validate_ultragraph(const RawUltragraph& raw);

// The generalized vertices: closure of singletons and ranges under pairwise
// union and intersection, computed as a fixed point. Sorted, contains the empty set.
std::vector<VertexSet> lattice_closure(const Ultragraph& g);
bool in_lattice(const Ultragraph& g, const VertexSet& a);
// Throws SetNotInLattice unless a is a generalized vertex.
void require_in_lattice(const Ultragraph& g, const VertexSet& a);

VertexSet sinks(const Ultragraph& g);

bool is_closed_path(const Ultragraph& g, const Path& p);
bool is_cycle(const Ultragraph& g, const Path& p);

// Smallest d with p = d^k.
Path primitive_root(const Path& p);

// Every cycle once, rotated so that the label sequence is lexicographically least.
std::vector<Path> enumerate_cycles(const Ultragraph& g);

struct Exit {
    enum class Kind { Edge, Sink };
    Kind kind;
    int position;  // 1-based index i of the path edge alpha_i
    EdgeId edge;   // valid for Kind::Edge
    VertexId sink; // valid for Kind::Sink
};

// Exits of a closed path. alpha_{|p|+1} is read as alpha_1. Throws NotClosed.
std::vector<Exit> exits_of_closed_path(const Ultragraph& g, const Path& p);

struct ConditionLResult {
    bool holds = true;
    std::optional<Path> witness;  // a cycle without exit when !holds
};

// A closed path without exit is a power of a cycle without exit, so checking
// the finitely many cycles decides the condition for all closed paths.
ConditionLResult satisfies_condition_L(const Ultragraph& g);

std::string path_to_string(const Ultragraph& g, const Path& p);
std::string set_to_string(const Ultragraph& g, const VertexSet& s);

}  // namespace ulpa

#endif  // ULPA_ULTRAGRAPH_HPP

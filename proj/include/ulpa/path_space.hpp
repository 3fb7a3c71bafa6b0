#ifndef ULPA_PATH_SPACE_HPP
#define ULPA_PATH_SPACE_HPP

#include "ulpa/free_word.hpp"
#include "ulpa/ultragraph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ulpa {

// The subset of the path space X of all points that begin with `prefix` and
// continue from vertex `next`. When `next` is a sink the set is the single
// finite point (prefix, next), or (next, next) for the empty prefix.
//
// Cylinders form a tree: two cylinders are either disjoint or one is a
// (syntactic) descendant of the other. Every well-formed cylinder is nonempty.
struct Cylinder {
    Path prefix;
    VertexId next;

    std::size_t depth() const { return prefix.size(); }
    auto operator<=>(const Cylinder&) const = default;
};

bool is_well_formed(const Ultragraph& g, const Cylinder& c);
// Throws InvalidPath or InvalidCylinder.
Cylinder make_cylinder(const Ultragraph& g, Path prefix, VertexId next);
bool cylinder_is_empty(const Ultragraph& g, const Cylinder& c);

// inner ⊆ outer read off the tree structure: equal, or inner's prefix extends
// outer's prefix through an edge leaving outer.next.
bool is_within(const Ultragraph& g, const Cylinder& inner, const Cylinder& outer);

// One refinement step; empty for sink cylinders.
std::vector<Cylinder> children(const Ultragraph& g, const Cylinder& c);
// The cylinder one level up, for nonempty prefixes.
Cylinder parent(const Ultragraph& g, const Cylinder& c);

std::string to_string(const Ultragraph& g, const Cylinder& c);

// Rewrites a weighted family so that no member strictly contains another:
// every cylinder that is a strict ancestor of some other member is replaced by
// its children, repeatedly. Values landing on the same cylinder are combined.
template <class V, class Combine>
std::map<Cylinder, V> disjointify(const Ultragraph& g, const std::vector<std::pair<Cylinder, V>>& items,
                                  Combine combine) {
    std::set<Cylinder> ancestors;
    for (const auto& [c, value] : items) {
        Cylinder up = c;
        while (!up.prefix.empty()) {
            up = parent(g, up);
            if (!ancestors.insert(up).second) break;
        }
    }
    std::map<Cylinder, V> out;
    std::vector<std::pair<Cylinder, V>> work(items.rbegin(), items.rend());
    while (!work.empty()) {
        auto [c, value] = std::move(work.back());
        work.pop_back();
        if (ancestors.count(c)) {
            for (auto& child : children(g, c)) work.emplace_back(std::move(child), value);
            continue;
        }
        auto it = out.find(c);
        if (it == out.end()) {
            out.emplace(std::move(c), std::move(value));
        } else {
            it->second = combine(it->second, value);
        }
    }
    return out;
}

// Merges complete sibling families carrying equal values into their parent,
// never going above `min_depth`. Applied to a disjoint family this yields the
// coarsest representation, which is unique.
template <class V, class Equal>
void coarsen(const Ultragraph& g, std::map<Cylinder, V>& family, std::size_t min_depth, Equal equal) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Cylinder> parents;
        for (const auto& [c, value] : family) {
            if (c.depth() > min_depth) parents.insert(parent(g, c));
        }
        for (const Cylinder& p : parents) {
            auto kids = children(g, p);
            auto first = family.find(kids.front());
            if (first == family.end()) continue;
            bool complete = true;
            for (const auto& kid : kids) {
                auto it = family.find(kid);
                if (it == family.end() || !equal(it->second, first->second)) {
                    complete = false;
                    break;
                }
            }
            if (!complete) continue;
            V value = first->second;
            for (const auto& kid : kids) family.erase(kid);
            family.emplace(p, std::move(value));
            changed = true;
        }
    }
}

// A finite disjoint union of nonempty cylinders.
class SetExpr {
public:
    SetExpr() = default;
    // Normalizes an arbitrary (possibly overlapping) family.
    static SetExpr from(const Ultragraph& g, const std::vector<Cylinder>& cylinders);
    // Caller guarantees the cylinders are well formed and pairwise disjoint.
    static SetExpr from_disjoint(std::vector<Cylinder> cylinders);

    const std::vector<Cylinder>& cylinders() const { return cylinders_; }
    bool empty() const { return cylinders_.empty(); }
    std::size_t max_depth() const;

    bool operator==(const SetExpr&) const = default;

private:
    std::vector<Cylinder> cylinders_;
};

// X_A for an empty prefix, X_{aA} otherwise. Throws InvalidPath.
SetExpr cylinder_from(const Ultragraph& g, const Path& a, const VertexSet& A);

// Every non-sink cylinder shallower than d is expanded until it reaches depth d.
SetExpr refine_to_depth(const Ultragraph& g, const SetExpr& s, std::size_t d);
bool set_equal(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2);

SetExpr set_union(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2);
SetExpr set_intersect(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2);
// Coarsest equivalent form.
SetExpr set_canonical(const Ultragraph& g, const SetExpr& s);

// X_t; empty for inadmissible words.
SetExpr x_set(const Ultragraph& g, const FreeWord& t);

// The image θ_t(s ∩ X_{t^{-1}}). Throws InadmissibleWord.
SetExpr theta_apply(const Ultragraph& g, const FreeWord& t, const SetExpr& s);

// Restriction of one cylinder to X_{b a^{-1}} followed by the prefix
// substitution b -> a. Shared by θ on sets and β on functions.
std::vector<Cylinder> theta_cylinder(const Ultragraph& g, const WordShape& shape, const Cylinder& c);

std::string to_string(const Ultragraph& g, const SetExpr& s);

}  // namespace ulpa

#endif  // ULPA_PATH_SPACE_HPP

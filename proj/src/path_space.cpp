#include "ulpa/path_space.hpp"

#include "ulpa/error.hpp"

#include <algorithm>

namespace ulpa {

bool is_well_formed(const Ultragraph& g, const Cylinder& c) {
    if (c.next.index < 0 || static_cast<std::size_t>(c.next.index) >= g.vertex_count()) return false;
    if (!g.is_path(c.prefix)) return false;
    return c.prefix.empty() || g.range(c.prefix.back()).contains(c.next);
}

Cylinder make_cylinder(const Ultragraph& g, Path prefix, VertexId next) {
    if (!g.is_path(prefix)) throw Error(ErrorKind::InvalidPath, "'" + path_to_string(g, prefix) + "' is not a path");
    Cylinder c{std::move(prefix), next};
    if (!is_well_formed(g, c)) {
        throw Error(ErrorKind::InvalidCylinder, "vertex is not in the range of the prefix: " + to_string(g, c));
    }
    return c;
}

bool cylinder_is_empty(const Ultragraph& g, const Cylinder& c) {
    if (!is_well_formed(g, c)) throw Error(ErrorKind::InvalidCylinder, "malformed cylinder");
    // A sink gives the finite point itself; a non-sink in a finite ultragraph
    // starts an infinite path or a path into a sink.
    return false;
}

bool is_within(const Ultragraph& g, const Cylinder& inner, const Cylinder& outer) {
    const std::size_t d = outer.prefix.size();
    if (inner.prefix.size() < d) return false;
    if (!std::equal(outer.prefix.begin(), outer.prefix.end(), inner.prefix.begin())) return false;
    if (inner.prefix.size() == d) return inner.next == outer.next;
    return g.source(inner.prefix[d]) == outer.next;
}

std::vector<Cylinder> children(const Ultragraph& g, const Cylinder& c) {
    std::vector<Cylinder> out;
    for (EdgeId e : g.emitted(c.next)) {
        for (VertexId u : g.range(e)) {
            Path p = c.prefix;
            p.push_back(e);
            out.push_back(Cylinder{std::move(p), u});
        }
    }
    return out;
}

Cylinder parent(const Ultragraph& g, const Cylinder& c) {
    Cylinder up{c.prefix, g.source(c.prefix.back())};
    up.prefix.pop_back();
    return up;
}

std::string to_string(const Ultragraph& g, const Cylinder& c) {
    return "[" + (c.prefix.empty() ? std::string("ε") : path_to_string(g, c.prefix)) + "; " + g.label(c.next) + "]";
}

namespace {

struct Unit {
    bool operator==(const Unit&) const = default;
};

std::vector<std::pair<Cylinder, Unit>> as_family(const std::vector<Cylinder>& cylinders) {
    std::vector<std::pair<Cylinder, Unit>> items;
    items.reserve(cylinders.size());
    for (const auto& c : cylinders) items.emplace_back(c, Unit{});
    return items;
}

std::vector<Cylinder> keys(const std::map<Cylinder, Unit>& family) {
    std::vector<Cylinder> out;
    out.reserve(family.size());
    for (const auto& [c, unit] : family) out.push_back(c);
    return out;
}

}  // namespace

SetExpr SetExpr::from(const Ultragraph& g, const std::vector<Cylinder>& cylinders) {
    for (const auto& c : cylinders) {
        if (!is_well_formed(g, c)) throw Error(ErrorKind::InvalidCylinder, "malformed cylinder " + to_string(g, c));
    }
    return from_disjoint(keys(disjointify(g, as_family(cylinders), [](Unit, Unit) { return Unit{}; })));
}

SetExpr SetExpr::from_disjoint(std::vector<Cylinder> cylinders) {
    SetExpr s;
    std::sort(cylinders.begin(), cylinders.end());
    s.cylinders_ = std::move(cylinders);
    return s;
}

std::size_t SetExpr::max_depth() const {
    std::size_t d = 0;
    for (const auto& c : cylinders_) d = std::max(d, c.depth());
    return d;
}

SetExpr cylinder_from(const Ultragraph& g, const Path& a, const VertexSet& A) {
    if (!g.is_path(a)) throw Error(ErrorKind::InvalidPath, "'" + path_to_string(g, a) + "' is not a path");
    std::vector<Cylinder> out;
    for (VertexId u : A.intersect(g.range_of(a))) out.push_back(Cylinder{a, u});
    return SetExpr::from_disjoint(std::move(out));
}

SetExpr refine_to_depth(const Ultragraph& g, const SetExpr& s, std::size_t d) {
    std::vector<Cylinder> done;
    std::vector<Cylinder> work = s.cylinders();
    while (!work.empty()) {
        Cylinder c = std::move(work.back());
        work.pop_back();
        if (c.depth() >= d || g.is_sink(c.next)) {
            done.push_back(std::move(c));
        } else {
            for (auto& child : children(g, c)) work.push_back(std::move(child));
        }
    }
    std::sort(done.begin(), done.end());
    done.erase(std::unique(done.begin(), done.end()), done.end());
    return SetExpr::from_disjoint(std::move(done));
}

bool set_equal(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2) {
    const std::size_t d = std::max(s1.max_depth(), s2.max_depth());
    return refine_to_depth(g, s1, d).cylinders() == refine_to_depth(g, s2, d).cylinders();
}

SetExpr set_union(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2) {
    std::vector<Cylinder> all = s1.cylinders();
    all.insert(all.end(), s2.cylinders().begin(), s2.cylinders().end());
    return SetExpr::from(g, all);
}

SetExpr set_intersect(const Ultragraph& g, const SetExpr& s1, const SetExpr& s2) {
    std::vector<Cylinder> out;
    for (const auto& a : s1.cylinders()) {
        for (const auto& b : s2.cylinders()) {
            if (is_within(g, a, b)) {
                out.push_back(a);
            } else if (is_within(g, b, a)) {
                out.push_back(b);
            }
        }
    }
    return SetExpr::from(g, out);
}

SetExpr set_canonical(const Ultragraph& g, const SetExpr& s) {
    auto family = disjointify(g, as_family(s.cylinders()), [](Unit, Unit) { return Unit{}; });
    coarsen(g, family, 0, [](Unit, Unit) { return true; });
    return SetExpr::from_disjoint(keys(family));
}

SetExpr x_set(const Ultragraph& g, const FreeWord& t) {
    if (!word_admissible(g, t)) return {};
    auto shape = *word_shape(t);
    std::vector<Cylinder> out;
    for (VertexId u : shape_range(g, shape)) out.push_back(Cylinder{shape.a, u});
    return SetExpr::from_disjoint(std::move(out));
}

std::vector<Cylinder> theta_cylinder(const Ultragraph& g, const WordShape& shape, const Cylinder& c) {
    std::vector<Cylinder> out;
    for (VertexId u : shape_range(g, shape)) {
        const Cylinder domain{shape.b, u};
        const Cylinder* piece = nullptr;
        if (is_within(g, c, domain)) {
            piece = &c;
        } else if (is_within(g, domain, c)) {
            piece = &domain;
        } else {
            continue;
        }
        Cylinder image{shape.a, piece->next};
        image.prefix.insert(image.prefix.end(), piece->prefix.begin() + static_cast<std::ptrdiff_t>(shape.b.size()),
                            piece->prefix.end());
        out.push_back(std::move(image));
    }
    return out;
}

SetExpr theta_apply(const Ultragraph& g, const FreeWord& t, const SetExpr& s) {
    const WordShape shape = admissible_shape(g, t);
    std::vector<Cylinder> out;
    for (const auto& c : s.cylinders()) {
        auto image = theta_cylinder(g, shape, c);
        out.insert(out.end(), image.begin(), image.end());
    }
    return SetExpr::from(g, out);
}

std::string to_string(const Ultragraph& g, const SetExpr& s) {
    if (s.empty()) return "∅";
    std::string out;
    for (std::size_t i = 0; i < s.cylinders().size(); ++i) {
        if (i) out += " ⊔ ";
        out += to_string(g, s.cylinders()[i]);
    }
    return out;
}

}  // namespace ulpa

#include "ulpa/region.hpp"

#include "ulpa/error.hpp"

#include <algorithm>

namespace ulpa {

std::string to_string(const Point& p) { return Ring::to_string(p.q) + "@" + p.label; }

Interval Interval::make(Scalar lo, Scalar hi, std::string label) {
    if (sgn(lo) < 0 || !(lo < hi) || hi > 1) {
        throw Error(ErrorKind::InvalidSystem,
                    "interval [" + Ring::to_string(lo) + ", " + Ring::to_string(hi) + ") is not inside [0, 1)");
    }
    return Interval{std::move(lo), std::move(hi), std::move(label)};
}

std::string to_string(const Interval& i) {
    return "[" + Ring::to_string(i.lo) + ", " + Ring::to_string(i.hi) + ")×{" + i.label + "}";
}

Region::Region(const std::vector<Interval>& intervals) {
    for (const auto& i : intervals) add(i);
}

Region::Spans Region::normalize(Spans spans) {
    std::sort(spans.begin(), spans.end());
    Spans out;
    for (auto& s : spans) {
        if (!(s.first < s.second)) continue;
        if (!out.empty() && s.first <= out.back().second) {
            if (s.second > out.back().second) out.back().second = s.second;
        } else {
            out.push_back(std::move(s));
        }
    }
    return out;
}

void Region::add(const Interval& i) {
    auto& spans = parts_[i.label];
    spans.emplace_back(i.lo, i.hi);
    spans = normalize(std::move(spans));
}

Region Region::unite(const Region& other) const {
    Region out = *this;
    for (const auto& [label, spans] : other.parts_) {
        auto& mine = out.parts_[label];
        mine.insert(mine.end(), spans.begin(), spans.end());
        mine = normalize(std::move(mine));
    }
    return out;
}

Region Region::intersect(const Region& other) const {
    Region out;
    for (const auto& [label, spans] : parts_) {
        auto it = other.parts_.find(label);
        if (it == other.parts_.end()) continue;
        Spans cut;
        for (const auto& a : spans) {
            for (const auto& b : it->second) {
                Scalar lo = std::max(a.first, b.first);
                Scalar hi = std::min(a.second, b.second);
                if (lo < hi) cut.emplace_back(std::move(lo), std::move(hi));
            }
        }
        cut = normalize(std::move(cut));
        if (!cut.empty()) out.parts_.emplace(label, std::move(cut));
    }
    return out;
}

Region Region::minus(const Region& other) const {
    Region out;
    for (const auto& [label, spans] : parts_) {
        auto it = other.parts_.find(label);
        if (it == other.parts_.end()) {
            out.parts_.emplace(label, spans);
            continue;
        }
        Spans left;
        for (const auto& a : spans) {
            Scalar cursor = a.first;
            for (const auto& b : it->second) {
                if (b.second <= cursor || b.first >= a.second) continue;
                if (b.first > cursor) left.emplace_back(cursor, b.first);
                cursor = std::max(cursor, b.second);
            }
            if (cursor < a.second) left.emplace_back(cursor, a.second);
        }
        left = normalize(std::move(left));
        if (!left.empty()) out.parts_.emplace(label, std::move(left));
    }
    return out;
}

bool Region::contains(const Point& p) const {
    auto it = parts_.find(p.label);
    if (it == parts_.end()) return false;
    for (const auto& s : it->second) {
        if (s.first <= p.q && p.q < s.second) return true;
    }
    return false;
}

std::vector<Interval> Region::intervals() const {
    std::vector<Interval> out;
    for (const auto& [label, spans] : parts_) {
        for (const auto& s : spans) out.push_back(Interval{s.first, s.second, label});
    }
    return out;
}

std::string to_string(const Region& r) {
    if (r.empty()) return "∅";
    std::string out;
    for (const auto& i : r.intervals()) {
        if (!out.empty()) out += " ∪ ";
        out += to_string(i);
    }
    return out;
}

AffinePiece AffinePiece::between(const Interval& src, const Interval& dst) {
    Scalar scale = (dst.hi - dst.lo) / (src.hi - src.lo);
    Scalar offset = dst.lo - scale * src.lo;
    return AffinePiece{src, dst, std::move(scale), std::move(offset)};
}

void AffinePiece::check() const {
    if (sgn(scale) <= 0 || scale * src.lo + offset != dst.lo || scale * src.hi + offset != dst.hi) {
        throw Error(ErrorKind::InvalidSystem,
                    "affine piece does not carry " + to_string(src) + " onto " + to_string(dst));
    }
}

AffinePiece AffinePiece::inverse() const {
    Scalar inv = 1 / scale;
    return AffinePiece{dst, src, inv, -offset * inv};
}

std::optional<Point> PiecewiseMap::apply(const Point& p) const {
    for (const auto& piece : pieces_) {
        if (piece.src.contains(p)) return piece.apply(p);
    }
    return std::nullopt;
}

std::optional<Point> PiecewiseMap::apply_inverse(const Point& p) const {
    for (const auto& piece : pieces_) {
        if (piece.dst.contains(p)) return piece.inverse().apply(p);
    }
    return std::nullopt;
}

PiecewiseMap PiecewiseMap::inverse() const {
    std::vector<AffinePiece> out;
    for (const auto& piece : pieces_) out.push_back(piece.inverse());
    return PiecewiseMap(std::move(out));
}

Region PiecewiseMap::domain() const {
    Region r;
    for (const auto& piece : pieces_) r.add(piece.src);
    return r;
}

Region PiecewiseMap::image() const {
    Region r;
    for (const auto& piece : pieces_) r.add(piece.dst);
    return r;
}

bool PiecewiseMap::injective() const {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
            if (!Region({pieces_[i].src}).intersect(Region({pieces_[j].src})).empty()) return false;
            if (!Region({pieces_[i].dst}).intersect(Region({pieces_[j].dst})).empty()) return false;
        }
    }
    return true;
}

bool PiecewiseMap::is_identity() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const AffinePiece& p) {
        return p.scale == 1 && sgn(p.offset) == 0 && p.src.label == p.dst.label;
    });
}

PiecewiseMap PiecewiseMap::simplified() const {
    std::vector<AffinePiece> sorted = pieces_;
    std::sort(sorted.begin(), sorted.end(), [](const AffinePiece& a, const AffinePiece& b) {
        return a.src.label != b.src.label ? a.src.label < b.src.label : a.src.lo < b.src.lo;
    });
    std::vector<AffinePiece> out;
    for (auto& p : sorted) {
        if (!out.empty()) {
            AffinePiece& last = out.back();
            if (last.src.label == p.src.label && last.dst.label == p.dst.label && last.src.hi == p.src.lo &&
                last.scale == p.scale && last.offset == p.offset) {
                last.src.hi = p.src.hi;
                last.dst.hi = p.dst.hi;
                continue;
            }
        }
        out.push_back(std::move(p));
    }
    return PiecewiseMap(std::move(out));
}

PiecewiseMap compose(const PiecewiseMap& outer, const PiecewiseMap& inner) {
    std::vector<AffinePiece> out;
    for (const auto& g : inner.pieces()) {
        for (const auto& f : outer.pieces()) {
            if (f.src.label != g.dst.label) continue;
            Scalar lo = std::max(f.src.lo, g.dst.lo);
            Scalar hi = std::min(f.src.hi, g.dst.hi);
            if (!(lo < hi)) continue;
            // Pull the overlap back through g.
            const AffinePiece g_inv = g.inverse();
            Interval src{g_inv.scale * lo + g_inv.offset, g_inv.scale * hi + g_inv.offset, g.src.label};
            Interval dst{f.scale * lo + f.offset, f.scale * hi + f.offset, f.dst.label};
            out.push_back(AffinePiece{std::move(src), std::move(dst), f.scale * g.scale, f.scale * g.offset + f.offset});
        }
    }
    return PiecewiseMap(std::move(out)).simplified();
}

}  // namespace ulpa

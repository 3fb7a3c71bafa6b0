#ifndef ULPA_REGION_HPP
#define ULPA_REGION_HPP

#include "ulpa/ring.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ulpa {

// A point (q, label) of the carrier [0,1) × labels.
struct Point {
    Scalar q;
    std::string label;

    bool operator==(const Point& other) const { return q == other.q && label == other.label; }
    bool operator<(const Point& other) const {
        return label != other.label ? label < other.label : q < other.q;
    }
};

std::string to_string(const Point& p);  // "1/3@w"

// [lo, hi) × {label}. Throws InvalidSystem unless 0 ≤ lo < hi ≤ 1.
struct Interval {
    Scalar lo;
    Scalar hi;
    std::string label;

    static Interval make(Scalar lo, Scalar hi, std::string label);
    static Interval block(std::string label) { return make(Scalar(0), Scalar(1), std::move(label)); }
    bool contains(const Point& p) const { return p.label == label && lo <= p.q && p.q < hi; }
    Scalar midpoint() const { return (lo + hi) / 2; }
    bool operator==(const Interval& other) const {
        return lo == other.lo && hi == other.hi && label == other.label;
    }
};

std::string to_string(const Interval& i);

// A finite union of labelled half-open intervals, kept merged and sorted.
class Region {
public:
    Region() = default;
    explicit Region(const std::vector<Interval>& intervals);

    void add(const Interval& i);
    Region unite(const Region& other) const;
    Region intersect(const Region& other) const;
    Region minus(const Region& other) const;
    bool contains(const Point& p) const;
    bool subset_of(const Region& other) const { return minus(other).empty(); }
    bool empty() const { return parts_.empty(); }
    std::vector<Interval> intervals() const;

    bool operator==(const Region& other) const { return parts_ == other.parts_; }

private:
    using Spans = std::vector<std::pair<Scalar, Scalar>>;
    static Spans normalize(Spans spans);

    std::map<std::string, Spans> parts_;
};

std::string to_string(const Region& r);

// x ↦ scale·x + offset from src onto dst, relabelling src.label to dst.label.
struct AffinePiece {
    Interval src;
    Interval dst;
    Scalar scale;
    Scalar offset;

    // The increasing affine bijection between two intervals.
    static AffinePiece between(const Interval& src, const Interval& dst);
    // Throws InvalidSystem when the coefficients do not carry src onto dst.
    void check() const;
    Point apply(const Point& p) const { return {scale * p.q + offset, dst.label}; }
    AffinePiece inverse() const;
};

class PiecewiseMap {
public:
    PiecewiseMap() = default;
    explicit PiecewiseMap(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {}

    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    std::optional<Point> apply(const Point& p) const;
    std::optional<Point> apply_inverse(const Point& p) const;
    PiecewiseMap inverse() const;
    Region domain() const;
    Region image() const;
    // Sources pairwise disjoint and images pairwise disjoint.
    bool injective() const;
    bool is_identity() const;
    // Merges neighbouring pieces that share one affine formula.
    PiecewiseMap simplified() const;

private:
    std::vector<AffinePiece> pieces_;
};

// outer ∘ inner on the part of inner's domain that inner sends into outer's domain.
PiecewiseMap compose(const PiecewiseMap& outer, const PiecewiseMap& inner);

}  // namespace ulpa

#endif  // ULPA_REGION_HPP

#ifndef ULPA_RING_HPP
#define ULPA_RING_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ulpa {

// Every coefficient is stored as an exact rational. The Ring decides which
// rationals are legal and how results are reduced.
using Scalar = mpq_class;

enum class RingKind { Integers, Rationals, IntegersMod };

class Ring {
public:
    static Ring integers();
    static Ring rationals();
    static Ring integers_mod(unsigned long modulus);

    // Accepts "z", "q" or "zmod:<n>".
    static Ring parse(std::string_view spec);

    RingKind kind() const { return kind_; }
    unsigned long modulus() const { return modulus_; }
    std::string name() const;

    bool has_zero_divisors() const;
    bool is_field() const;

    // Brings a rational into the ring's canonical representative set, or throws
    // InvalidScalar when it has no image (e.g. 1/2 in Z, 1/2 in Z/4).
    Scalar normalize(const Scalar& value) const;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return normalize(Scalar(1)); }
    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
    Scalar neg(const Scalar& a) const { return reduce(-a); }
    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

    // Parses integer or "p/q" literals, with an optional leading minus.
    Scalar parse_literal(std::string_view text) const;
    static std::string to_string(const Scalar& value);

    bool operator==(const Ring& other) const = default;

private:
    Ring(RingKind kind, unsigned long modulus) : kind_(kind), modulus_(modulus) {}

    // Fast path for values already known to be in range of the ring.
    Scalar reduce(const Scalar& value) const;

    RingKind kind_;
    unsigned long modulus_;
};

// Parses an exact rational "p", "-p" or "p/q" without ring constraints.
Scalar parse_rational(std::string_view text);

}  // namespace ulpa

#endif  // ULPA_RING_HPP

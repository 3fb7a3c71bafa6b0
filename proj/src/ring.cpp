#include "ulpa/ring.hpp"

#include "ulpa/error.hpp"

#include <cctype>

namespace ulpa {

namespace {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Ring Ring::integers() { return Ring(RingKind::Integers, 0); }
Ring Ring::rationals() { return Ring(RingKind::Rationals, 0); }

Ring Ring::integers_mod(unsigned long modulus) {
    if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
    return Ring(RingKind::IntegersMod, modulus);
}

Ring Ring::parse(std::string_view spec) {
    if (spec == "z" || spec == "Z") return integers();
    if (spec == "q" || spec == "Q") return rationals();
    constexpr std::string_view prefix = "zmod:";
    if (spec.substr(0, prefix.size()) == prefix) {
        auto digits = spec.substr(prefix.size());
        if (!all_digits(digits) || digits.size() > 9) {
            throw Error(ErrorKind::InvalidArgument, "bad modulus in ring spec '" + std::string(spec) + "'");
        }
        return integers_mod(std::stoul(std::string(digits)));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown ring '" + std::string(spec) + "' (use z, q or zmod:<n>)");
}

std::string Ring::name() const {
    switch (kind_) {
        case RingKind::Integers: return "z";
        case RingKind::Rationals: return "q";
        case RingKind::IntegersMod: return "zmod:" + std::to_string(modulus_);
    }
    return "?";
}

bool Ring::has_zero_divisors() const {
    return kind_ == RingKind::IntegersMod && !is_prime(modulus_);
}

bool Ring::is_field() const {
    return kind_ == RingKind::Rationals || (kind_ == RingKind::IntegersMod && is_prime(modulus_));
}

Scalar Ring::reduce(const Scalar& value) const {
    if (kind_ != RingKind::IntegersMod) return value;
    mpz_class n(static_cast<unsigned long>(modulus_));
    mpz_class r = value.get_num() % n;
    if (r < 0) r += n;
    return Scalar(r);
}

Scalar Ring::normalize(const Scalar& value) const {
    Scalar v = value;
    v.canonicalize();
    switch (kind_) {
        case RingKind::Rationals:
            return v;
        case RingKind::Integers:
            if (v.get_den() != 1) {
                throw Error(ErrorKind::InvalidScalar, Ring::to_string(v) + " is not an integer");
            }
            return v;
        case RingKind::IntegersMod: {
            mpz_class n(static_cast<unsigned long>(modulus_));
            mpz_class den = v.get_den();
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
                throw Error(ErrorKind::InvalidScalar,
                            "denominator of " + Ring::to_string(v) + " is not invertible mod " + n.get_str());
            }
            mpz_class r = (v.get_num() * inv) % n;
            if (r < 0) r += n;
            return Scalar(r);
        }
    }
    return v;
}

Scalar parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw Error(ErrorKind::InvalidScalar, "malformed rational '" + std::string(text) + "'");
    }
    const mpz_class d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::InvalidScalar, "zero denominator in '" + std::string(text) + "'");
    const mpz_class n{std::string(num)};
    Scalar q(n, d);
    q.canonicalize();
    return negative ? Scalar(-q) : q;
}

Scalar Ring::parse_literal(std::string_view text) const { return normalize(parse_rational(text)); }

std::string Ring::to_string(const Scalar& value) {
    Scalar v = value;
    v.canonicalize();
    return v.get_str();
}

}  // namespace ulpa

#pragma once
/**
 * @file rat.hpp
 * @brief Exact rational scalar.
 *
 * Rat is the scalar every algebraic identity in this library is checked over:
 * arbitrary-precision rationals kept in canonical form (fully reduced,
 * denominator > 0).  The representation is GMP's mpq, reached through
 * boost::multiprecision, which maintains the canonical form on every
 * operation; this wrapper adds the string formats used by the tools
 * ("p/q" plus exact decimal literals) and typed errors on division by zero.
 *
 * Round trips are exact: parse(to_string(x)) == x for every value, and
 * decimal literals like "0.125" denote exactly 1/8.
 */

#include <boost/multiprecision/gmp.hpp>
#include <cctype>
#include <cstdint>
#include <string>
#include <type_traits>

#include "trlab/errors.hpp"

namespace trlab {

using BigInt = boost::multiprecision::mpz_int;

class Rat {
public:
    using backend_type = boost::multiprecision::mpq_rational;

    Rat() : v_(0) {}
    template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
    Rat(T n) : v_(static_cast<long long>(n)) {}  // NOLINT: implicit by design
    Rat(const BigInt& n) : v_(n) {}              // NOLINT
    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        v_ = backend_type(num) / backend_type(den);
    }
    explicit Rat(backend_type v) : v_(std::move(v)) {}

    /// Parses "p", "p/q", or an exact decimal literal like "-3.25".
    static Rat parse(const std::string& text);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }
    const backend_type& raw() const { return v_; }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }

    Rat operator-() const { return Rat(backend_type(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    /// Canonical form: "p" when the denominator is 1, otherwise "p/q".
    std::string to_string() const;

    double to_double() const { return v_.convert_to<double>(); }

private:
    backend_type v_;
};

inline Rat inv(const Rat& a) {
    if (a.is_zero()) throw DivisionByZero("inverse of zero");
    return Rat(1) / a;
}

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

/// a^e for integer e; negative exponents require a != 0.
inline Rat pow_int(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? a : inv(a);
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }

}  // namespace trlab

#pragma once
/**
 * @file bigfloat.hpp
 * @brief Arbitrary-precision binary floats (BigFloat) and complex pairs (BigC).
 *
 * The exact checks in this library run over rationals; BigFloat exists for the
 * two places where exactness is impossible by nature — numeric momenta that
 * have no rational partner, and the e^{X/eps} scaling limit — and there the
 * contract is explicit precision control: every value carries its precision
 * in bits, binary operations compute at the larger operand precision, and
 * nothing silently downgrades.  Precision for fresh values defaults to 256
 * bits, overridable through the TRLAB_PRECISION environment variable.
 *
 * BigC is the straightforward complex pairing with field operations, integer
 * powers, conjugation and modulus; the fermionic weights only ever need
 * integer powers, so no transcendental complex functions are provided.
 */

#include <mpfr.h>

#include <string>
#include <utility>

#include "trlab/errors.hpp"
#include "trlab/rat.hpp"

namespace trlab {

/// Default working precision in bits (>= 64); reads TRLAB_PRECISION once.
mpfr_prec_t default_precision();

class BigFloat {
public:
    BigFloat() : BigFloat(default_precision()) {}
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long n, mpfr_prec_t prec = default_precision());
    /// Exact rational value rounded once to the requested precision.
    static BigFloat from_rat(const Rat& q, mpfr_prec_t prec = default_precision());
    static BigFloat parse(const std::string& text, mpfr_prec_t prec = default_precision());

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

    friend BigFloat abs(const BigFloat& a);
    friend BigFloat sqrt(const BigFloat& a);
    friend BigFloat exp(const BigFloat& a);
    friend BigFloat log(const BigFloat& a);
    friend BigFloat pow_int(const BigFloat& a, long e);
    friend BigFloat max(const BigFloat& a, const BigFloat& b);

    /// Decimal string with enough digits to round-trip at this precision.
    std::string to_string() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// |a-b| / max(|a|, |b|), and |a-b| itself when both are tiny (< 2^-16).
BigFloat rel_diff(const BigFloat& a, const BigFloat& b);

class BigC {
public:
    BigC() = default;
    BigC(BigFloat re) : re_(std::move(re)) {}  // NOLINT: implicit by design
    BigC(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    BigC(int n) : re_(BigFloat::from_long(n)) {}  // NOLINT

    static BigC i(mpfr_prec_t prec = default_precision()) {
        return BigC(BigFloat(prec), BigFloat::from_long(1, prec));
    }
    static BigC from_rat(const Rat& q, mpfr_prec_t prec = default_precision()) {
        return BigC(BigFloat::from_rat(q, prec), BigFloat(prec));
    }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    BigC conj() const { return BigC(re_, -im_); }
    BigFloat norm() const { return re_ * re_ + im_ * im_; }

    BigC operator-() const { return BigC(-re_, -im_); }
    friend BigC operator+(const BigC& a, const BigC& b) {
        return BigC(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend BigC operator-(const BigC& a, const BigC& b) {
        return BigC(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend BigC operator*(const BigC& a, const BigC& b) {
        return BigC(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend BigC operator/(const BigC& a, const BigC& b) {
        if (b.is_zero()) throw DivisionByZero("complex division by zero");
        BigFloat n = b.norm();
        BigC c = a * b.conj();
        return BigC(c.re_ / n, c.im_ / n);
    }
    BigC& operator+=(const BigC& o) { return *this = *this + o; }
    BigC& operator-=(const BigC& o) { return *this = *this - o; }
    BigC& operator*=(const BigC& o) { return *this = *this * o; }
    BigC& operator/=(const BigC& o) { return *this = *this / o; }

    friend bool operator==(const BigC& a, const BigC& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const BigC& a, const BigC& b) { return !(a == b); }

    std::string to_string() const {
        return re_.to_string() + " + " + im_.to_string() + "i";
    }

private:
    BigFloat re_;
    BigFloat im_;
};

inline BigC inv(const BigC& a) { return BigC(1) / a; }

inline BigC pow_int(const BigC& a, long e) {
    if (e == 0) return BigC(1);
    BigC base = e > 0 ? a : inv(a);
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    BigC acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline BigC conj(const BigC& a) { return a.conj(); }
inline BigFloat abs(const BigC& a) { return sqrt(a.norm()); }

/// max(rel_diff of real parts, rel_diff of imaginary parts) via modulus:
/// |a-b| / max(|a|, |b|), absolute when both moduli are tiny.
BigFloat rel_diff(const BigC& a, const BigC& b);

}  // namespace trlab

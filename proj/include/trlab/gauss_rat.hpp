#pragma once
/**
 * @file gauss_rat.hpp
 * @brief Exact Gaussian rationals a + b·i.
 *
 * The fermionic sums need a field containing i with exact arithmetic: subset
 * weights carry the unit i(-1)^l and complex conjugation acts as a symmetry
 * of the whole family.  GaussRat is the field Q(i) with Rat components; it is
 * a field because a^2 + b^2 = 0 forces a = b = 0 over the rationals, so
 * division by any nonzero element is exact.
 *
 * Canonical string form "a+bi" / "a-bi", with pure-real "a", pure-imaginary
 * "bi", and units written "i" / "-i"; parsing round-trips exactly.
 */

#include <string>

#include "trlab/errors.hpp"
#include "trlab/rat.hpp"

namespace trlab {

class GaussRat {
public:
    GaussRat() = default;
    GaussRat(Rat real) : re_(std::move(real)) {}  // NOLINT: implicit by design
    GaussRat(int n) : re_(n) {}                   // NOLINT
    GaussRat(Rat real, Rat imag) : re_(std::move(real)), im_(std::move(imag)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
    static GaussRat parse(const std::string& text);

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    /// Squared modulus a^2 + b^2, zero only at zero.
    Rat norm() const { return re_ * re_ + im_ * im_; }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }
    GaussRat& operator+=(const GaussRat& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussRat& operator*=(const GaussRat& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i2 = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        if (o.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
        Rat n = o.norm();
        GaussRat c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string to_string() const;

private:
    Rat re_;
    Rat im_;
};

inline GaussRat inv(const GaussRat& a) {
    if (a.is_zero()) throw DivisionByZero("inverse of zero");
    return GaussRat(1) / a;
}

inline GaussRat pow_int(const GaussRat& a, long e) {
    if (e == 0) return GaussRat(1);
    GaussRat base = e > 0 ? a : inv(a);
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    GaussRat acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline GaussRat conj(const GaussRat& a) { return a.conj(); }

}  // namespace trlab

#pragma once
/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over the exact rationals.
 *
 * Used for the spectral symbol: Lax matrices are rational functions of ζ and
 * their identities are checked as exact polynomial identities after
 * cross-multiplication, so only ring operations are needed (no division).
 * The zero polynomial is the empty coefficient vector; nonzero polynomials
 * keep a nonzero leading coefficient.
 */

#include <string>
#include <vector>

#include "trlab/rat.hpp"

namespace trlab {

class Poly {
public:
    Poly() = default;
    Poly(Rat constant) {  // NOLINT: implicit by design
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }
    Poly(int constant) : Poly(Rat(constant)) {}  // NOLINT
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// The monomial ζ.
    static Poly zeta() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    /// Coefficient of ζ^k (zero beyond the degree).
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

    Rat eval(const Rat& z) const {
        Rat acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

    Poly operator-() const {
        Poly out = *this;
        for (Rat& x : out.c_) x = -x;
        return out;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += c_[k].to_string();
            } else {
                out += "(" + c_[k].to_string() + ")z^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace trlab

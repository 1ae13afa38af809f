#pragma once
/**
 * @file lax.hpp
 * @brief A1 Lax matrices: M(x,ζ) and the exact matrix identity check.
 *
 * T(x,ζ) is the n×n matrix with diagonal (1/x_1, ..., 1/x_n), subdiagonal
 * entries -1, corner entry (1,n) equal to -ζ, and zeros elsewhere;
 * det T = 1/(x_1⋯x_n) - ζ.  M(x,ζ) = T(x,ζ)^{-1} is stored exactly as a
 * matrix of ζ-polynomial numerators over the common scalar denominator
 * D(ζ) = 1 - ζ·x_1⋯x_n (= det T · x_1⋯x_n):
 *
 *     num_{ij} = x_j x_{j+1} ⋯ x_i                    for i >= j,
 *     num_{ij} = ζ · (x_1⋯x_i)(x_j⋯x_n)               for i <  j.
 *
 * The defining property T·M = M·T = I is a checked identity (tests verify it
 * as exact polynomial equations), and the map identity
 * M(x,ζ)M(y,ζ) = M(x',ζ)M(y',ζ) is checked by cross-multiplied polynomial
 * matrices, so no polynomial division ever happens.
 */

#include <vector>

#include "trlab/crystal.hpp"
#include "trlab/poly.hpp"

namespace trlab {

/// Square matrix of exact ζ-polynomials.
class PolyMat {
public:
    PolyMat(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

    int size() const { return n_; }
    Poly& at(int i, int j) { return e_[idx(i, j)]; }
    const Poly& at(int i, int j) const { return e_[idx(i, j)]; }

    static PolyMat identity(int n) {
        PolyMat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Poly(1);
        return m;
    }

    friend PolyMat operator*(const PolyMat& a, const PolyMat& b) {
        PolyMat out(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                Poly acc;
                for (int k = 0; k < a.n_; ++k) acc += a.at(i, k) * b.at(k, j);
                out.at(i, j) = acc;
            }
        return out;
    }
    friend PolyMat operator-(const PolyMat& a, const PolyMat& b) {
        PolyMat out(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] - b.e_[k];
        return out;
    }
    PolyMat scaled(const Poly& s) const {
        PolyMat out(n_);
        for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] * s;
        return out;
    }

    bool is_zero() const {
        for (const Poly& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }
    friend bool operator==(const PolyMat& a, const PolyMat& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
    }
    int n_;
    std::vector<Poly> e_;
};

/// M(x,ζ) as (numerator matrix, scalar denominator): M = num / den.
struct LaxMatrix {
    int n;
    PolyMat num;
    Poly den;
};

/// The displayed bidiagonal-plus-corner matrix T(x,ζ); A1 only.
PolyMat t_matrix(const CrystalElement& x);

/// det T(x,ζ) = 1/(x_1⋯x_n) - ζ, from the closed form.
Poly t_det(const CrystalElement& x);

/// M(x,ζ) = T(x,ζ)^{-1}, exact.
LaxMatrix lax_matrix(const CrystalElement& x);

/// Cross-multiplied entrywise residual of M(x)M(y) - M(x')M(y'): the returned
/// matrix is identically zero iff the rational-function identity holds.
PolyMat check_lax(const CrystalElement& x, const CrystalElement& y,
                  const CrystalElement& xp, const CrystalElement& yp);

}  // namespace trlab

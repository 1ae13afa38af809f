#include "trlab/lax.hpp"

namespace trlab {

namespace {

void require_a1(const CrystalElement& x) {
    if (x.family() != Family::A1) throw WrongFamily("Lax matrices exist for A1");
}

// x_a * x_{a+1} * ... * x_b (empty product for b < a).
Rat span_prod(const CrystalElement& x, int a, int b) {
    Rat p(1);
    for (int k = a; k <= b; ++k) p *= x.x(k);
    return p;
}

}  // namespace

PolyMat t_matrix(const CrystalElement& x) {
    require_a1(x);
    int n = x.rank();
    PolyMat t(n);
    for (int i = 1; i <= n; ++i) t.at(i - 1, i - 1) = Poly(inv(x.x(i)));
    for (int i = 2; i <= n; ++i) t.at(i - 1, i - 2) = Poly(-1);
    t.at(0, n - 1) = t.at(0, n - 1) - Poly::zeta();
    return t;
}

Poly t_det(const CrystalElement& x) {
    require_a1(x);
    return Poly(inv(span_prod(x, 1, x.rank()))) - Poly::zeta();
}

LaxMatrix lax_matrix(const CrystalElement& x) {
    require_a1(x);
    int n = x.rank();
    PolyMat num(n);
    Rat full = span_prod(x, 1, n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i >= j) {
                num.at(i - 1, j - 1) = Poly(span_prod(x, j, i));
            } else {
                num.at(i - 1, j - 1) =
                    Poly::zeta() * Poly(span_prod(x, 1, i) * span_prod(x, j, n));
            }
        }
    }
    Poly den = Poly(1) - Poly::zeta() * Poly(full);
    if (den.is_zero()) throw SingularInversion("degenerate denominator");
    return LaxMatrix{n, std::move(num), std::move(den)};
}

PolyMat check_lax(const CrystalElement& x, const CrystalElement& y,
                  const CrystalElement& xp, const CrystalElement& yp) {
    LaxMatrix mx = lax_matrix(x);
    LaxMatrix my = lax_matrix(y);
    LaxMatrix mxp = lax_matrix(xp);
    LaxMatrix myp = lax_matrix(yp);
    PolyMat lhs = mx.num * my.num;
    PolyMat rhs = mxp.num * myp.num;
    // lhs/(Dx Dy) - rhs/(Dx' Dy'), cross-multiplied
    return lhs.scaled(mxp.den * myp.den) - rhs.scaled(mx.den * my.den);
}

}  // namespace trlab

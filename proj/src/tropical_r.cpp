#include "trlab/tropical_r.hpp"

#include <cstddef>

#include "trlab/errors.hpp"

namespace trlab {

namespace {

void require_pair(const CrystalElement& x, const CrystalElement& y, Family f) {
    if (x.family() != f || y.family() != f)
        throw WrongFamily("pair must belong to the expected family");
    if (x.rank() != y.rank()) throw WrongFamily("pair must share the same rank");
}

DPair<Rat> to_dpair(const CrystalElement& x, const CrystalElement& y) {
    DPair<Rat> p;
    p.n = x.rank();
    p.x = x.coords();
    p.y = y.coords();
    return p;
}

// Explicit formula for V_0:
//   V_0 = ℓ(x)·y_1/yb_1
//       + ℓ(x)·Σ_{m=2}^{n-1} (Π_{i=1}^{m-1} y_i/x_i)(1 + y_m/yb_m)
//       + x_n y_n Π_{i=1}^{n-1} xb_i y_i
//       + ℓ(y)·xb_1/x_1
//       + ℓ(y)·Σ_{m=2}^{n-1} (Π_{i=1}^{m-1} xb_i/yb_i)(1 + xb_m/x_m)
//       + Π_{i=1}^{n-1} xb_i y_i
Rat v0_verbatim(const DPair<Rat>& p) {
    const int n = p.n;
    const Rat lx = dp_level(p.x);
    const Rat ly = dp_level(p.y);

    Rat acc = lx * p.Y(1) / p.Yb(1);
    Rat prefix(1);
    for (int m = 2; m <= n - 1; ++m) {
        prefix = prefix * p.Y(m - 1) / p.X(m - 1);
        acc = acc + lx * prefix * (Rat(1) + p.Y(m) / p.Yb(m));
    }
    Rat mid(1);
    for (int i = 1; i <= n - 1; ++i) mid = mid * p.Xb(i) * p.Y(i);
    acc = acc + p.X(n) * p.Y(n) * mid;
    acc = acc + ly * p.Xb(1) / p.X(1);
    prefix = Rat(1);
    for (int m = 2; m <= n - 1; ++m) {
        prefix = prefix * p.Xb(m - 1) / p.Yb(m - 1);
        acc = acc + ly * prefix * (Rat(1) + p.Xb(m) / p.X(m));
    }
    return acc + mid;
}

// Recursion:
//   V_i = yb_i ((1/xb_i) V_{i-1} + (ℓx - ℓy)(1/x_i + 1/yb_i)),  1 <= i <= n-2
//   V_{n-1} = (yb_{n-1}/y_n)((y_n/xb_{n-1}) V_{n-2}
//             + (ℓx - ℓy)(y_n/x_{n-1} + 1/yb_{n-1}))
std::vector<Rat> v_list_verbatim(const DPair<Rat>& p) {
    const int n = p.n;
    const Rat lx = dp_level(p.x);
    const Rat ly = dp_level(p.y);
    const Rat d = lx - ly;
    std::vector<Rat> v;
    v.reserve(static_cast<std::size_t>(n));
    v.push_back(v0_verbatim(p));
    for (int i = 1; i <= n - 2; ++i) {
        const Rat& prev = v.back();
        v.push_back(p.Yb(i) * (prev / p.Xb(i) + d * (inv(p.X(i)) + inv(p.Yb(i)))));
    }
    const Rat& prev = v.back();
    v.push_back((p.Yb(n - 1) / p.Y(n)) *
                ((p.Y(n) / p.Xb(n - 1)) * prev +
                 d * (p.Y(n) / p.X(n - 1) + inv(p.Yb(n - 1)))));
    return v;
}

VUTable table_from_lists(const DPair<Rat>& p, std::vector<Rat> v,
                         std::vector<Rat> vs1, std::vector<Rat> vstar,
                         Rat vsn_last) {
    const int n = p.n;
    VUTable t;
    t.n = n;
    t.V = std::move(v);
    t.Vs1 = std::move(vs1);
    t.Vstar = std::move(vstar);
    t.Vsn_last = std::move(vsn_last);
    t.U.assign(static_cast<std::size_t>(n - 1), Rat(1));
    t.U[0] = t.V[0] * t.Vs1[0];
    t.U[static_cast<std::size_t>(n - 2)] =
        t.V[static_cast<std::size_t>(n - 1)] * t.Vstar[static_cast<std::size_t>(n - 1)];
    for (int i = 2; i <= n - 2; ++i) {
        Rat num = t.V[static_cast<std::size_t>(i)] *
                      t.Vstar[static_cast<std::size_t>(i - 1)] / p.Y(i) +
                  t.V[static_cast<std::size_t>(i - 1)] *
                      t.Vstar[static_cast<std::size_t>(i)] / p.Xb(i);
        Rat den = inv(p.X(i)) + inv(p.Yb(i));
        if (den.is_zero()) throw SingularInput("vanishing 1/x_i + 1/yb_i in U_i");
        t.U[static_cast<std::size_t>(i - 1)] = num / den;
    }
    return t;
}

VUTable vu_table_route(const CrystalElement& x, const CrystalElement& y,
                       bool verbatim) {
    require_pair(x, y, Family::D1);
    DPair<Rat> p = to_dpair(x, y);
    auto lists = [verbatim](const DPair<Rat>& q) {
        return verbatim ? v_list_verbatim(q) : v_list_pos(q);
    };
    std::vector<Rat> v = lists(p);
    std::vector<Rat> vs1 = lists(dp_sigma(SigmaKind::one, p));
    std::vector<Rat> vstar = lists(dp_sigma(SigmaKind::star, p));
    Rat vsn_last = lists(dp_sigma(SigmaKind::top, p)).back();
    return table_from_lists(p, std::move(v), std::move(vs1), std::move(vstar),
                            std::move(vsn_last));
}

}  // namespace

Rat p_poly(int i, const CrystalElement& x, const CrystalElement& y) {
    require_pair(x, y, Family::A1);
    return p_poly_core(i, x.coords(), y.coords());
}

RResult r_typeA(const CrystalElement& x, const CrystalElement& y) {
    require_pair(x, y, Family::A1);
    for (int i = 0; i < x.rank(); ++i)
        if (p_poly_core(i, x.coords(), y.coords()).is_zero())
            throw SingularInput("vanishing P_i");
    auto [xp, yp] = r_typeA_core(x.coords(), y.coords());
    return {CrystalElement(Family::A1, x.rank(), std::move(xp)),
            CrystalElement(Family::A1, x.rank(), std::move(yp))};
}

std::vector<Rat> check_toda(const CrystalElement& x, const CrystalElement& y,
                            const CrystalElement& xp, const CrystalElement& yp) {
    require_pair(x, y, Family::A1);
    require_pair(xp, yp, Family::A1);
    if (xp.rank() != x.rank()) throw WrongFamily("primed pair must share the same rank");
    const int n = x.rank();
    std::vector<Rat> res;
    res.reserve(static_cast<std::size_t>(2 * n + 2));
    for (int i = 1; i <= n; ++i)
        res.push_back(x.x(i) * y.x(i) - xp.x(i) * yp.x(i));
    for (int i = 1; i <= n; ++i) {
        const int j = i % n + 1;  // cyclic i+1
        res.push_back((inv(x.x(i)) + inv(y.x(j))) - (inv(xp.x(i)) + inv(yp.x(j))));
    }
    Rat prod_xy(1), prod_yx(1);
    for (int i = 1; i <= n; ++i) {
        prod_xy = prod_xy * x.x(i) / yp.x(i);
        prod_yx = prod_yx * y.x(i) / xp.x(i);
    }
    res.push_back(prod_xy - Rat(1));
    res.push_back(prod_yx - Rat(1));
    return res;
}

VUTable vu_table(const CrystalElement& x, const CrystalElement& y) {
    return vu_table_route(x, y, /*verbatim=*/true);
}

VUTable vu_table_positive(const CrystalElement& x, const CrystalElement& y) {
    return vu_table_route(x, y, /*verbatim=*/false);
}

RResult r_typeD(const CrystalElement& x, const CrystalElement& y) {
    require_pair(x, y, Family::D1);
    const int n = x.rank();
    VUTable t = vu_table(x, y);
    for (const Rat& v : t.V)
        if (v.is_zero()) throw SingularInput("vanishing V_i");
    for (const Rat& v : t.Vs1)
        if (v.is_zero()) throw SingularInput("vanishing V_i^{sigma_1}");
    for (const Rat& v : t.Vstar)
        if (v.is_zero()) throw SingularInput("vanishing V_i^{sigma_*}");
    if (t.Vsn_last.is_zero()) throw SingularInput("vanishing V_{n-1}^{sigma_n}");
    for (const Rat& u : t.U)
        if (u.is_zero()) throw SingularInput("vanishing U_i");

    DPair<Rat> p = to_dpair(x, y);
    VUCore<Rat> core;
    core.V = t.V;
    core.Vs1 = t.Vs1;
    core.Vstar = t.Vstar;
    core.Vsn_last = t.Vsn_last;
    core.U = t.U;
    auto [xp, yp] = r_typeD_core(p, core);
    return {CrystalElement(Family::D1, n, std::move(xp)),
            CrystalElement(Family::D1, n, std::move(yp))};
}

RResult r_reduced(const CrystalElement& x, const CrystalElement& y) {
    if (x.family() != Family::A2 && x.family() != Family::C1)
        throw WrongFamily("r_reduced expects an A2 or C1 pair");
    require_pair(x, y, x.family());
    RResult big = r_typeD(embed(x), embed(y));
    return {project(big.x_out, x.family()), project(big.y_out, x.family())};
}

RResult r_reduced(Family f, const CrystalElement& x, const CrystalElement& y) {
    if (x.family() != f) throw WrongFamily("element family does not match request");
    return r_reduced(x, y);
}

RResult r_apply(const CrystalElement& x, const CrystalElement& y) {
    switch (x.family()) {
        case Family::A1: return r_typeA(x, y);
        case Family::D1: return r_typeD(x, y);
        case Family::A2:
        case Family::C1: return r_reduced(x, y);
    }
    throw WrongFamily("unknown family");
}

YbeReport check_ybe(const CrystalElement& x, const CrystalElement& y,
                    const CrystalElement& z) {
    auto r1 = [](std::array<CrystalElement, 3> t) {
        RResult r = r_apply(t[0], t[1]);
        return std::array<CrystalElement, 3>{r.x_out, r.y_out, t[2]};
    };
    auto r2 = [](std::array<CrystalElement, 3> t) {
        RResult r = r_apply(t[1], t[2]);
        return std::array<CrystalElement, 3>{t[0], r.x_out, r.y_out};
    };
    std::array<CrystalElement, 3> in{x, y, z};
    std::array<CrystalElement, 3> left = r1(r2(r1(in)));
    std::array<CrystalElement, 3> right = r2(r1(r2(in)));
    bool equal = true;
    for (int k = 0; k < 3; ++k)
        if (!(left[static_cast<std::size_t>(k)] == right[static_cast<std::size_t>(k)]))
            equal = false;
    return {left, right, equal};
}

YbeReport check_ybe(Family f, const CrystalElement& x, const CrystalElement& y,
                    const CrystalElement& z) {
    if (x.family() != f) throw WrongFamily("element family does not match request");
    return check_ybe(x, y, z);
}

}  // namespace trlab

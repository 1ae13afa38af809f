#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <map>
#include <vector>

#include "trlab/bilinear.hpp"
#include "trlab/crystal.hpp"
#include "trlab/fermion.hpp"
#include "trlab/tropical_r.hpp"

using namespace trlab;

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

Rat rat(long n, long d = 1) { return Rat(n) / Rat(d); }

GaussRat gr(long n, long d = 1) { return GaussRat(rat(n, d)); }

bool all_zero(const std::vector<GaussRat>& v) {
    for (const GaussRat& r : v)
        if (!r.is_zero()) return false;
    return true;
}

GridSpec spec_rank3() {
    GridSpec s;
    s.n = 3;
    s.Kval = Rat(2);
    s.Lval = Rat(7);
    s.a = {Rat(5)};
    return s;
}

GridSpec spec_rank4() {
    GridSpec s;
    s.n = 4;
    s.Kval = Rat(2);
    s.Lval = Rat(7);
    s.a = {Rat(5), Rat(9)};
    return s;
}

GridSpec spec_rank5() {
    GridSpec s;
    s.n = 5;
    s.Kval = Rat(2);
    s.Lval = Rat(7);
    s.a = {Rat(5), Rat(9), Rat(13)};
    return s;
}

/// Momentum-pair seeds of the rank-3 real family (partner solves to 4).
ReductionSeeds seeds_m0() {
    ReductionSeeds sd;
    sd.p_main = {Rat(3)};
    sd.b = {rat(1, 3)};
    return sd;
}

/// Seeds of the rank-3 mixed family (q solves to 168/125).
ReductionSeeds seeds_m1() {
    ReductionSeeds sd;
    sd.p_main = {Rat(3)};
    sd.p_aux = {rat(24, 5)};
    sd.b = {rat(1, 3)};
    sd.c = {rat(1, 7)};
    return sd;
}

/// One mixed pair, no momentum constraints (for the open-boundary variant).
FermionParams params_mixed_rank4() {
    FermionParams g;
    g.N = 1;
    g.M = 1;
    g.b = {gr(1, 3)};
    g.c = {gr(1, 7)};
    g.p = {gr(3), gr(4), gr(6)};
    g.q = {gr(11, 2)};
    return g;
}

/// Two mixed generators, no real pairs.
FermionParams params_m2() {
    FermionParams g;
    g.N = 0;
    g.M = 2;
    g.c = {gr(2, 3), gr(5, 4)};
    g.p = {gr(1, 2), gr(1, 5)};
    g.q = {gr(1, 3), gr(1, 7)};
    return g;
}

bool same_data(const TauData& a, const TauData& b) {
    return a.n == b.n && a.lambda == b.lambda && a.kappa == b.kappa &&
           a.S == b.S && a.W == b.W && a.N == b.N && a.E == b.E &&
           a.tau == b.tau && a.alpha == b.alpha && a.beta == b.beta;
}

bool same_params(const FermionParams& a, const FermionParams& b) {
    return a.N == b.N && a.M == b.M && a.b == b.b && a.c == b.c &&
           a.p == b.p && a.q == b.q;
}

bool tables_equal(const VUTable& a, const VUTable& b) {
    return a.n == b.n && a.V == b.V && a.Vs1 == b.Vs1 && a.Vstar == b.Vstar &&
           a.Vsn_last == b.Vsn_last && a.U == b.U;
}

}  // namespace

TEST_CASE("time arrays: tilde involution, oddness, basis relations") {
    const TimeArray e = eps(rat(2, 3));
    const TimeArray et = eps_tilde(rat(2, 3));

    // eps(a) = -eps~(-a), and tilde exchanges the two bases.
    CHECK(e == -eps_tilde(rat(-2, 3)));
    CHECK(et == -eps(rat(-2, 3)));
    CHECK(time_tilde(e) == et);
    CHECK(time_tilde(et) == e);
    CHECK(time_tilde(time_tilde(e - et)) == e - et);

    // odd means fixed by tilde: eps(a)+eps~(a) is odd, eps(a) alone is not.
    CHECK(time_is_odd(TimeArray()));
    CHECK(time_is_odd(e + et));
    CHECK(!time_is_odd(e));
    CHECK(!time_is_odd(et));
    CHECK(time_is_odd(eps(rat(1, 9)) + eps_tilde(rat(1, 9)) - e - et));

    // additive bookkeeping
    CHECK((e - e).is_zero());
    CHECK(e + et - et == e);
    CHECK(eps(rat(1, 2)) + eps(rat(1, 2)) != eps(Rat(1)));

    // serialization round trip
    const TimeArray t = eps(rat(1, 2)) - eps_tilde(rat(3, 4)) + eps(rat(-5, 7));
    CHECK(time_array_from_json(time_array_to_json(t)) == t);
    CHECK(time_array_from_json(time_array_to_json(TimeArray())).is_zero());
}

TEST_CASE("exponential weights: closed forms, poles, zeros") {
    // exp over eps(a) evaluates to the geometric factor 1/(1 - a p).
    CHECK(exp_xi(eps(rat(1, 2)), gr(1, 3)) == gr(6, 5));
    // exp over eps~(a) evaluates to (1 + a p).
    CHECK(exp_xi(eps_tilde(rat(1, 2)), gr(1, 3)) == gr(7, 6));
    // empty time array: weight 1
    CHECK(exp_xi(TimeArray(), gr(9, 2)) == gr(1));
    // multiplicative in the time argument
    const TimeArray x = eps(rat(1, 9)) + eps_tilde(rat(2, 7)) - eps(rat(3, 5));
    const TimeArray y = eps_tilde(rat(1, 4)) - eps(rat(2, 11));
    const GaussRat p = gr(1, 6);
    CHECK(exp_xi(x + y, p) == exp_xi(x, p) * exp_xi(y, p));
    // reflection: exp(xi(x~, p)) * exp(xi(x, -p)) = 1
    CHECK(exp_xi(time_tilde(x), p) * exp_xi(x, -p) == gr(1));
    // pole of the geometric factor
    CHECK_THROWS_AS(exp_xi(eps(Rat(2)), gr(1, 2)), PoleAtMomentum);
    // zero of the polynomial factor is a legitimate value
    CHECK(exp_xi(eps_tilde(Rat(2)), gr(-1, 2)) == gr(0));
}

TEST_CASE("vertex time grid: two-step relations, oddness, offsets") {
    const GridSpec spec = spec_rank3();
    const VertexTimeGrid grid = build_time_grid(spec);
    const Rat iK = rat(1, 2);  // 1/K
    const Rat iL = rat(1, 7);  // 1/L

    const TimeArray x0 = grid.at(JDomain::T0);
    const TimeArray x1 = grid.at(JDomain::T1);
    const TimeArray x2 = grid.at(JDomain::T2);
    const TimeArray x3 = grid.at(JDomain::T3);
    const TimeArray x4 = grid.at(JDomain::T4);
    const TimeArray xN = grid.at(JDomain::N);
    const TimeArray xS = grid.at(JDomain::S);
    const TimeArray xW = grid.at(JDomain::W);
    const TimeArray xE = grid.at(JDomain::E);

    // corner times anchored at the (odd) base time
    CHECK(x1 == spec.eta);

    // the twelve one-step differences around a vertex
    CHECK(xW - x3 == eps_tilde(iL));
    CHECK(x0 - xS == eps_tilde(iL));
    CHECK(xE - x4 == eps_tilde(iL));
    CHECK(x2 - xW == eps(iL));
    CHECK(xN - x0 == eps(iL));
    CHECK(x1 - xE == eps(iL));
    CHECK(xN - x2 == eps_tilde(iK));
    CHECK(x0 - xW == eps_tilde(iK));
    CHECK(xS - x3 == eps_tilde(iK));
    CHECK(x1 - xN == eps(iK));
    CHECK(xE - x0 == eps(iK));
    CHECK(x4 - xS == eps(iK));

    // all four corner times are odd, the face/edge times are not
    CHECK(time_is_odd(x1));
    CHECK(time_is_odd(x2));
    CHECK(time_is_odd(x3));
    CHECK(time_is_odd(x4));
    CHECK(!time_is_odd(xN));
    CHECK(!time_is_odd(x0));

    // tilde shifts an edge time by the one-step lattice move
    CHECK(time_tilde(xN) == xN + eps(iK) - eps_tilde(iK));
    CHECK(time_tilde(xS) == xS + eps(iK) - eps_tilde(iK));
    CHECK(time_tilde(xW) == xW + eps(iL) - eps_tilde(iL));
    CHECK(time_tilde(xE) == xE + eps(iL) - eps_tilde(iL));

    // component offsets z_1 = 0, z_j - z_{j-1} = -eps(1/a_j)
    REQUIRE(grid.z.size() == 2);
    CHECK(grid.z[0].is_zero());
    CHECK(grid.z[1] == -eps(rat(1, 5)));
    CHECK(grid.component(JDomain::T1, 1) == x1);
    CHECK(grid.component(JDomain::T1, 2) == x1 + grid.z[1]);
    CHECK(grid.component(JDomain::N, 2) + eps(rat(1, 5)) ==
          grid.component(JDomain::N, 1));
    CHECK_THROWS_AS(grid.component(JDomain::T1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(grid.component(JDomain::T1, 3), IndexOutOfRange);

    // anchoring at a nonzero odd base shifts every face uniformly
    GridSpec spec2 = spec_rank3();
    spec2.eta = eps(rat(1, 9)) + eps_tilde(rat(1, 9));
    const VertexTimeGrid grid2 = build_time_grid(spec2);
    CHECK(grid2.at(JDomain::T1) == spec2.eta);
    CHECK(grid2.at(JDomain::S) - xS == spec2.eta);

    // base time must be odd
    GridSpec bad = spec_rank3();
    bad.eta = eps(rat(1, 3));
    CHECK_THROWS_AS(build_time_grid(bad), OddnessViolation);

    // grid spec serialization round trip
    const Json j = grid_spec_to_json(spec2);
    const GridSpec back = grid_spec_from_json(j);
    CHECK(back.n == spec2.n);
    CHECK(back.Kval == spec2.Kval);
    CHECK(back.Lval == spec2.Lval);
    CHECK(back.a == spec2.a);
    CHECK(back.eta == spec2.eta);
}

TEST_CASE("lattice time grid: per-cell relations and vertex consistency") {
    const GridSpec spec = spec_rank3();

    // a 2x2 window with distinct line levels
    const std::map<int, Rat> Kline = {{0, Rat(2)}, {1, Rat(3)}};
    const std::map<int, Rat> Lline = {{0, Rat(7)}, {1, Rat(11)}};
    const LatticeTimeGrid lat = build_time_grid(spec, Kline, Lline, TimeArray());

    for (int s = 0; s <= 1; ++s) {
        for (int t = 0; t <= 1; ++t) {
            const Rat iK = Rat(1) / Kline.at(s);
            const Rat iL = Rat(1) / Lline.at(t);
            const TimeArray c0 = lat.face_time(2 * s, 2 * t);
            const TimeArray c1 = lat.face_time(2 * s + 1, 2 * t - 1);
            const TimeArray c2 = lat.face_time(2 * s - 1, 2 * t - 1);
            const TimeArray c3 = lat.face_time(2 * s - 1, 2 * t + 1);
            const TimeArray c4 = lat.face_time(2 * s + 1, 2 * t + 1);
            const TimeArray cN = lat.face_time(2 * s, 2 * t - 1);
            const TimeArray cS = lat.face_time(2 * s, 2 * t + 1);
            const TimeArray cW = lat.face_time(2 * s - 1, 2 * t);
            const TimeArray cE = lat.face_time(2 * s + 1, 2 * t);
            CHECK(cW - c3 == eps_tilde(iL));
            CHECK(c0 - cS == eps_tilde(iL));
            CHECK(cE - c4 == eps_tilde(iL));
            CHECK(c2 - cW == eps(iL));
            CHECK(cN - c0 == eps(iL));
            CHECK(c1 - cE == eps(iL));
            CHECK(cN - c2 == eps_tilde(iK));
            CHECK(c0 - cW == eps_tilde(iK));
            CHECK(cS - c3 == eps_tilde(iK));
            CHECK(c1 - cN == eps(iK));
            CHECK(cE - c0 == eps(iK));
            CHECK(c4 - cS == eps(iK));
        }
    }

    // component offsets reuse the grid z-array
    REQUIRE(lat.z.size() == 2);
    CHECK(lat.z[1] == -eps(rat(1, 5)));
    CHECK(lat.component(1, -1, 2) == lat.face_time(1, -1) + lat.z[1]);

    // a single-line window reproduces the vertex grid when the base is
    // chosen so the first corner lands on the vertex anchor
    const std::map<int, Rat> K1 = {{0, Rat(2)}};
    const std::map<int, Rat> L1 = {{0, Rat(7)}};
    const TimeArray base = -(eps(rat(1, 7)) + eps_tilde(rat(1, 7)) +
                             eps(rat(1, 2)) + eps_tilde(rat(1, 2)));
    REQUIRE(time_is_odd(base));
    const LatticeTimeGrid one = build_time_grid(spec, K1, L1, base);
    const VertexTimeGrid ref = build_time_grid(spec);
    CHECK(one.face_time(0, 0) == ref.at(JDomain::T0));
    CHECK(one.face_time(1, -1) == ref.at(JDomain::T1));
    CHECK(one.face_time(-1, -1) == ref.at(JDomain::T2));
    CHECK(one.face_time(-1, 1) == ref.at(JDomain::T3));
    CHECK(one.face_time(1, 1) == ref.at(JDomain::T4));
    CHECK(one.face_time(0, -1) == ref.at(JDomain::N));
    CHECK(one.face_time(0, 1) == ref.at(JDomain::S));
    CHECK(one.face_time(-1, 0) == ref.at(JDomain::W));
    CHECK(one.face_time(1, 0) == ref.at(JDomain::E));

    // line levels must be nonzero, the base must be odd
    const std::map<int, Rat> Kbad = {{0, Rat(0)}};
    CHECK_THROWS_AS(build_time_grid(spec, Kbad, L1, base), ZeroScale);
    CHECK_THROWS_AS(build_time_grid(spec, K1, L1, eps(rat(1, 3))),
                    OddnessViolation);
}

TEST_CASE("expectation values: minimal closed forms") {
    const TimeArray y0;

    // no generators: f = 1 and F keeps only the neutral charge
    FermionParams g0;
    g0.N = 0;
    g0.M = 0;
    const TimeArray x = eps(rat(1, 9)) - eps(rat(2, 17));
    CHECK(eval_f(0, x, y0, g0) == gr(1));
    CHECK(eval_f(1, x, y0, g0) == gr(1));
    CHECK(eval_F(0, 1, 0, x, y0, g0) == gr(1));
    CHECK(eval_F(-1, 2, 0, x, y0, g0) == gr(1));
    CHECK(eval_F(0, 1, 1, x, y0, g0).is_zero());
    CHECK(eval_F(1, 0, -1, x, y0, g0).is_zero());

    // single real pair: f_l = 1 + (b/2) e^{xi(x,p1)} e^{xi(x~,p2)} (p1-p2)/(p1+p2)
    FermionParams g10;
    g10.N = 1;
    g10.M = 0;
    g10.b = {gr(3)};
    g10.p = {gr(1, 2), gr(1, 5)};
    const TimeArray w = eps(rat(1, 9)) + eps_tilde(rat(1, 9));
    const GaussRat expect = gr(1) + gr(3, 2) * exp_xi(w, gr(1, 2)) *
                                        exp_xi(time_tilde(w), gr(1, 5)) *
                                        (gr(1, 2) - gr(1, 5)) /
                                        (gr(1, 2) + gr(1, 5));
    CHECK(expect == gr(9169, 5236));
    CHECK(eval_f(0, w, y0, g10) == expect);
    // with no mixed generators the two boundary functions coincide
    CHECK(eval_f(1, w, y0, g10) == expect);
    // the label only takes the two boundary values
    CHECK_THROWS_AS(eval_f(2, w, y0, g10), IndexOutOfRange);
    CHECK_THROWS_AS(eval_f(-1, w, y0, g10), IndexOutOfRange);

    // single mixed generator: f_l = 1 + i(-1)^l (c/2) e^{xi(x,p)+xi(y,q)}
    FermionParams g01;
    g01.N = 0;
    g01.M = 1;
    g01.c = {gr(2, 3)};
    g01.p = {gr(1, 2)};
    g01.q = {gr(1, 3)};
    const TimeArray xa = eps(rat(1, 9));
    const TimeArray ya = eps(rat(1, 7));
    const GaussRat f0 = eval_f(0, xa, ya, g01);
    const GaussRat f1 = eval_f(1, xa, ya, g01);
    CHECK(f0 == GaussRat(Rat(1), rat(63, 170)));
    CHECK(f1 == GaussRat(Rat(1), rat(-63, 170)));
    // real parameters: the two boundary functions are conjugate
    CHECK(f1 == f0.conj());
}

TEST_CASE("expectation values: reflection symmetry and charge selection") {
    const TimeArray x = eps(rat(1, 9)) - eps(rat(2, 17));
    const TimeArray y0;

    // neutral sectors only when no mixed generators are present
    FermionParams g10;
    g10.N = 1;
    g10.M = 0;
    g10.b = {gr(2, 3)};
    g10.p = {gr(1, 2), gr(1, 5)};
    for (int l1 = -1; l1 <= 2; ++l1)
        for (int l2 = -1; l2 <= 2; ++l2) {
            CHECK(eval_F(l1, l2, 1, x, y0, g10).is_zero());
            CHECK(eval_F(l1, l2, -1, x, y0, g10).is_zero());
        }

    // index reflection: F_{l1,l2;l}(x, y) = (-1)^{(l1+l2)l} F_{1-l1,1-l2;-l}(x~, y~)
    auto check_sym = [&](const FermionParams& g, int lmax) {
        for (int l1 = -1; l1 <= 2; ++l1)
            for (int l2 = -1; l2 <= 2; ++l2)
                for (int l = -lmax; l <= lmax; ++l) {
                    const GaussRat lhs = eval_F(l1, l2, l, x, y0, g);
                    GaussRat rhs =
                        eval_F(1 - l1, 1 - l2, -l, time_tilde(x), y0, g);
                    if (((l1 + l2) * l) % 2 != 0) rhs = -rhs;
                    CHECK(lhs == rhs);
                }
    };
    check_sym(g10, 1);
    check_sym(params_m2(), 2);

    GridSpec spec = spec_rank3();
    check_sym(solve_reduction(spec, seeds_m1()), 1);
}

TEST_CASE("expectation values: exact bilinear identities") {
    const TimeArray x = eps(rat(1, 9)) - eps(rat(2, 17));
    const TimeArray y0;
    const Rat b1(3), b2(4), b3(7);

    // single real pair at the reference index triple
    FermionParams g10;
    g10.N = 1;
    g10.M = 0;
    g10.b = {gr(2, 3)};
    g10.p = {gr(1, 2), gr(1, 5)};
    for (FermionIdentity which :
         {FermionIdentity::bl1, FermionIdentity::bl2, FermionIdentity::bl3,
          FermionIdentity::bl4, FermionIdentity::blaux}) {
        CHECK(check_bilinear_identities(which, 1, 1, 0, x, b1, b2, b3, g10, y0)
                  .is_zero());
    }

    // two mixed generators: full index grid including charge two
    const FermionParams g2 = params_m2();
    for (int l1 = 0; l1 <= 1; ++l1)
        for (int l2 = 0; l2 <= 1; ++l2)
            for (int l = -2; l <= 2; ++l)
                for (FermionIdentity which :
                     {FermionIdentity::bl1, FermionIdentity::bl2,
                      FermionIdentity::bl3, FermionIdentity::bl4}) {
                    CHECK(check_bilinear_identities(which, l1, l2, l, x, b1, b2,
                                                    b3, g2, y0)
                              .is_zero());
                }
    CHECK(check_bilinear_identities(FermionIdentity::blaux, 0, 0, 0, x, b1, b2,
                                    Rat(0), g2, y0)
              .is_zero());

    // one real and one mixed generator, second time axis active
    FermionParams gm;
    gm.N = 1;
    gm.M = 1;
    gm.b = {gr(2, 3)};
    gm.c = {gr(5, 4)};
    gm.p = {gr(1, 2), gr(1, 5), gr(1, 11)};
    gm.q = {gr(1, 7)};
    const TimeArray ya = eps(rat(1, 7));
    for (int l1 = 0; l1 <= 1; ++l1)
        for (int l = -1; l <= 1; ++l)
            for (FermionIdentity which :
                 {FermionIdentity::bl1, FermionIdentity::bl2,
                  FermionIdentity::bl3, FermionIdentity::bl4}) {
                CHECK(check_bilinear_identities(which, l1, 1, l, x, b1, b2, b3,
                                                gm, ya)
                          .is_zero());
            }
    CHECK(check_bilinear_identities(FermionIdentity::blaux, 0, 0, 0, x, b1, b2,
                                    b3, gm, ya)
              .is_zero());

    // zero scale encodes a vanishing reciprocal in the three-term identities
    for (FermionIdentity which : {FermionIdentity::bl1, FermionIdentity::bl2,
                                  FermionIdentity::bl3}) {
        CHECK(check_bilinear_identities(which, 1, 1, -1, x, Rat(3), Rat(-3),
                                        Rat(0), g2, y0)
                  .is_zero());
    }
    // ... but the all-shift and two-term identities reject it
    CHECK_THROWS_AS(check_bilinear_identities(FermionIdentity::bl4, 0, 0, 0, x,
                                              b1, b2, Rat(0), g2, y0),
                    ZeroScale);
    CHECK_THROWS_AS(check_bilinear_identities(FermionIdentity::blaux, 0, 0, 0,
                                              x, Rat(0), b2, b3, g2, y0),
                    ZeroScale);

    // floating evaluation at 256 bits stays at working precision
    FermionParamsN g2n;
    g2n.N = 0;
    g2n.M = 2;
    g2n.c = {BigC::from_rat(rat(2, 3)), BigC::from_rat(rat(5, 4))};
    g2n.p = {BigC::from_rat(rat(1, 2)), BigC::from_rat(rat(1, 5))};
    g2n.q = {BigC::from_rat(rat(1, 3)), BigC::from_rat(rat(1, 7))};
    const BigC rn = check_bilinear_identities(FermionIdentity::bl1, 1, 1, 1, x,
                                              b1, b2, b3, g2n, y0);
    CHECK(abs(rn).to_double() < 1e-30);
}

TEST_CASE("expectation values: neutral-sector decompositions") {
    const TimeArray y0;
    const TimeArray w = eps(rat(1, 9)) + eps_tilde(rat(1, 9));
    REQUIRE(time_is_odd(w));

    // products of boundary functions at a fully odd time
    FermionParams g10;
    g10.N = 1;
    g10.M = 0;
    g10.b = {gr(2, 3)};
    g10.p = {gr(1, 2), gr(1, 5)};
    CHECK(all_zero(
        check_neutral_decomposition(NeutralKind::jm76, w, Rat(0), g10, g10, y0)));
    CHECK(all_zero(check_neutral_decomposition(NeutralKind::jm76, w, Rat(1),
                                               params_m2(), params_m2(), y0)));

    // deformed version: x sits at distance eps~(1/c) from an odd time
    const Rat c(11);
    const TimeArray xs = w + eps_tilde(Rat(1) / c);
    GridSpec spec = spec_rank3();
    const FermionParams g1 = solve_reduction(spec, seeds_m1());
    CHECK(all_zero(
        check_neutral_decomposition(NeutralKind::sapix, xs, c, g1, g1, y0)));
    CHECK(all_zero(check_neutral_decomposition(NeutralKind::sapix, xs, c,
                                               params_m2(), params_m2(), y0)));

    // the deformation collapses onto the odd-time statement as c grows
    const Rat big(1000000);
    const TimeArray xb = w + eps_tilde(Rat(1) / big);
    const GaussRat near01 = eval_F(0, 1, 0, xb, y0, g1);
    const GaussRat at01 = eval_F(0, 1, 0, w, y0, g1);
    const GaussRat near00 = eval_F(0, 0, 0, xb, y0, g1);
    const GaussRat at00 = eval_F(0, 0, 0, w, y0, g1);
    const Rat tol = rat(1, 10000000);
    CHECK((near01 - at01).norm() < tol);
    CHECK((near00 - at00).norm() < tol);

    // oddness contracts
    CHECK_THROWS_AS(check_neutral_decomposition(NeutralKind::jm76,
                                                eps(rat(1, 9)), Rat(0), g10,
                                                g10, y0),
                    OddnessViolation);
    CHECK_THROWS_AS(check_neutral_decomposition(NeutralKind::sapix,
                                                eps(rat(1, 9)), c, g10, g10,
                                                y0),
                    OddnessViolation);
    CHECK_THROWS_AS(check_neutral_decomposition(NeutralKind::sapix, xs, Rat(0),
                                                g10, g10, y0),
                    ZeroScale);
}

TEST_CASE("momentum pairing and coupling transport") {
    const GridSpec spec = spec_rank3();

    // the level polynomial behind the pairing
    CHECK(reduction_value(spec, gr(3)) == gr(144, 25));
    CHECK(reduction_value(spec, gr(4)) == gr(144, 25));
    CHECK(reduction_value(spec, gr(24, 5)) == gr(28224, 15625));

    // exact pairing: partner of 3 is 4, mixed momentum closes at 168/125
    const FermionParams g1 = solve_reduction(spec, seeds_m1());
    CHECK(g1.N == 1);
    CHECK(g1.M == 1);
    CHECK(g1.p_at(1) == gr(3));
    CHECK(g1.p_at(2) == gr(4));
    CHECK(g1.p_at(3) == gr(24, 5));
    CHECK(g1.q_at(1) == gr(168, 125));
    CHECK(g1.q_at(1) * g1.q_at(1) == reduction_value(spec, g1.p_at(3)));

    // transported couplings of the rank-lowered parameter set
    const FermionParams h = h_parameters(g1, spec);
    CHECK(h.b[0] == gr(-1, 18));
    CHECK(h.c[0] == gr(1, 49));
    CHECK(h.p == g1.p);
    CHECK(h.q == g1.q);

    // no rational partner for this seed at the same level
    ReductionSeeds bad = seeds_m0();
    bad.p_main = {Rat(2)};
    CHECK_THROWS_AS(solve_reduction(spec, bad), NoRationalPartner);

    // transport contract violations
    {
        FermionParams gv;
        gv.N = 1;
        gv.M = 0;
        gv.b = {gr(1, 3)};
        gv.p = {gr(3), gr(7)};
        CHECK_THROWS_AS(h_parameters(gv, spec), ReductionViolated);
        gv.b = {gr(0)};  // zero coupling is exempt and passes through
        const FermionParams hv = h_parameters(gv, spec);
        CHECK(hv.b[0].is_zero());
    }
    {
        // q = 0 with a nonzero numerator is a genuine pole ...
        FermionParams gq;
        gq.N = 0;
        gq.M = 1;
        gq.c = {gr(1, 7)};
        gq.p = {gr(-5)};
        gq.q = {gr(0)};
        CHECK_THROWS_AS(h_parameters(gq, spec), PoleInA);
        // ... while the removable 0/0 at the degeneration point gives 0
        gq.p = {gr(5)};
        const FermionParams hq = h_parameters(gq, spec);
        CHECK(hq.c[0].is_zero());
    }

    // floating pairing at rank 4 closes the level equation to working precision
    const GridSpec s4 = spec_rank4();
    ReductionSeeds sd;
    sd.p_main = {Rat(3)};
    sd.p_aux = {Rat(4)};
    sd.b = {rat(1, 3)};
    sd.c = {rat(1, 7)};
    const FermionParamsN gn = solve_reduction_numeric(s4, sd);
    CHECK(rel_diff(reduction_value(s4, gn.p[0]), reduction_value(s4, gn.p[1]))
              .to_double() < 1e-60);
    CHECK(abs(reduction_value(s4, gn.p[2]) - gn.q[0] * gn.q[0]).to_double() <
          1e-60);

    // shift identity: the transported parameters absorb the z_{n-1} offset
    const VertexTimeGrid grid = build_time_grid(spec);
    const TimeArray z2 = grid.z[1];
    const TimeArray x = eps(rat(1, 9)) - eps(rat(2, 17));
    const TimeArray y0;
    const FermionParams g0 = solve_reduction(spec, seeds_m0());
    const FermionParams h0 = h_parameters(g0, spec);
    for (int l1 = 0; l1 <= 1; ++l1)
        for (int l2 = 0; l2 <= 1; ++l2)
            for (int l = -1; l <= 1; ++l) {
                CHECK(eval_F_shifted(l1, l2, l, x + z2, y0, g0) ==
                      eval_F(l1, l2, l, x, y0, h0));
                CHECK(eval_F_shifted(l1, l2, l, x + z2, y0, g1) ==
                      eval_F(l1, l2, l, x, y0, h));
            }
}

TEST_CASE("finite tau assignment: exact families") {
    const GridSpec spec = spec_rank3();
    const TimeArray y0;

    // ---- real family (one momentum pair) -------------------------------
    const FermionParams g0 = solve_reduction(spec, seeds_m0());
    const TauCore<GaussRat> core0 = assign_taus(spec, g0, TauVariant::finite_n);

    // crystal parameters come from the grid levels
    CHECK(core0.alpha == gr(-5));
    CHECK(core0.beta == gr(9));
    CHECK(core0.la[0] == gr(7));
    CHECK(core0.la[1] == gr(2));
    CHECK(core0.la[2] == gr(1));
    CHECK(core0.ka[0] == gr(2));
    CHECK(core0.ka[1] == gr(-3));
    CHECK(core0.ka[2] == gr(1));
    CHECK(core0.lab[1] == gr(12));
    CHECK(core0.kab[1] == gr(7));

    // every bilinear equation of the closed chain vanishes identically
    for (int J = 1; J <= 4; ++J)
        for (int i = 0; i <= 3; ++i)
            CHECK(eval_equation_core(J, i, core0).is_zero());

    // pinned central column
    CHECK(core0.tau[0][0] == gr(241193, 242550));
    CHECK(core0.tau[0][1] == gr(241193, 242550));
    CHECK(core0.tau[0][2] == gr(49199, 48510));
    CHECK(core0.tau[0][3] == gr(49199, 48510));

    // the rational extraction feeds the whole downstream tool chain
    const TauData d0 = tau_core_to_data(core0);
    CHECK(is_solution(d0));
    const BilinearizationReport rep = verify_bilinearization(d0);
    CHECK(rep.pass);
    const Quadruple quad = extract_quadruple(d0);
    CHECK(tables_equal(uv_from_tau(d0), vu_table(quad.x, quad.y)));
    // the linear completion from the independent data reproduces it exactly
    const TauData solved =
        solve_unique(3, d0.N, d0.W, d0.tau[1], d0.tau[2], d0.tau[3], d0.lambda,
                     d0.kappa, d0.alpha, d0.beta);
    CHECK(same_data(solved, d0));
    // no mixed generators also means the first-column constraint holds
    CHECK(constrain_family(Family::C1, d0).second.ok());

    // ---- mixed family (momentum pair + mixed generator) ----------------
    const FermionParams g1 = solve_reduction(spec, seeds_m1());
    const TauCore<GaussRat> core1 = assign_taus(spec, g1, TauVariant::finite_n);
    for (int J = 1; J <= 4; ++J)
        for (int i = 0; i <= 3; ++i)
            CHECK(eval_equation_core(J, i, core1).is_zero());
    CHECK(core1.tau[1][0] == GaussRat(rat(41, 42), rat(2001, 28028)));
    // genuinely complex entries cannot be extracted into rational data
    CHECK_THROWS_AS(tau_core_to_data(core1), ConfigError);

    // second time axis must be odd
    CHECK_THROWS_AS(assign_taus(spec, g1, TauVariant::finite_n, eps(rat(1, 3))),
                    OddnessViolation);

    // ---- zero couplings degenerate to the all-unit solution ------------
    const GridSpec s4 = spec_rank4();
    FermionParams g00;
    g00.N = 0;
    g00.M = 0;
    const TauData unit = tau_core_to_data(
        assign_taus(s4, g00, TauVariant::finite_n));
    CHECK(same_data(unit, unit_parameter_data(4, Rat(2), Rat(7), s4.a_full())));
}

TEST_CASE("finite tau assignment: corner and boundary oracles") {
    const GridSpec spec = spec_rank3();
    const TimeArray y0;
    const FermionParams g = solve_reduction(spec, seeds_m1());
    const TauCore<GaussRat> core = assign_taus(spec, g, TauVariant::finite_n);
    const VertexTimeGrid grid = build_time_grid(spec);
    const GaussRat two = gr(2);
    const GaussRat iu = GaussRat::i();
    const JDomain corners[4] = {JDomain::T1, JDomain::T2, JDomain::T3,
                                JDomain::T4};

    // first-column products at the corner times
    for (int J = 1; J <= 4; ++J) {
        const GaussRat lhs =
            eval_F(1, 1, 0, grid.component(corners[J - 1], 1), y0, g);
        CHECK(lhs == core.tau[uz(J)][0] * core.tau[uz(J)][1]);
    }
    // mixed products at the north edge time
    {
        auto FN = [&](int l1, int l2, int l) {
            return eval_F(l1, l2, l, grid.component(JDomain::N, 1), y0, g);
        };
        CHECK(two * FN(0, 1, 0) == core.tau[1][1] * core.tau[2][1] +
                                       core.tau[1][0] * core.tau[2][0]);
        CHECK(two * iu * FN(0, 1, 1) == core.tau[1][1] * core.tau[2][1] -
                                            core.tau[1][0] * core.tau[2][0]);
    }
    // last-column products through the index-shifted evaluation
    for (int J = 1; J <= 4; ++J) {
        const GaussRat lhs =
            eval_F_shifted(0, 0, 0, grid.component(corners[J - 1], 2), y0, g);
        CHECK(lhs == core.tau[uz(J)][2] * core.tau[uz(J)][3]);
    }
    {
        const GaussRat lhs3 =
            two * eval_F_shifted(0, 0, 0, grid.component(JDomain::N, 2), y0, g);
        const GaussRat rhs3 = core.tau[1][3] * core.tau[2][2] +
                              core.tau[2][3] * core.tau[1][2];
        CHECK(lhs3 == rhs3);
        const GaussRat lhs4 =
            two * iu * gr(1, 2) *
            eval_F_shifted(-1, 1, 1, grid.component(JDomain::N, 2), y0, g);
        const GaussRat rhs4 = core.tau[1][3] * core.tau[2][2] -
                              core.tau[2][3] * core.tau[1][2];
        CHECK(lhs4 == rhs4);
    }
}

TEST_CASE("open-boundary tau assignment: interior equations") {
    // no momentum constraint is needed when only the interior rows matter
    {
        const TauCore<GaussRat> core = assign_taus(
            spec_rank4(), params_mixed_rank4(), TauVariant::infinite_n);
        CHECK(all_zero(interior_residuals(core)));
        CHECK(interior_residuals(core).size() == 8);  // 4 * (n - 2)
    }
    {
        FermionParams g;
        g.N = 1;
        g.M = 0;
        g.b = {gr(1, 3)};
        g.p = {gr(3), gr(7)};
        const TauCore<GaussRat> core =
            assign_taus(spec_rank3(), g, TauVariant::infinite_n);
        CHECK(all_zero(interior_residuals(core)));
    }
    {
        const TauCore<GaussRat> core = assign_taus(
            spec_rank5(), params_mixed_rank4(), TauVariant::infinite_n);
        CHECK(all_zero(interior_residuals(core)));
        CHECK(interior_residuals(core).size() == 12);
    }
}

TEST_CASE("floating tau families at 256 bits") {
    // rank 3 and rank 4, both with a momentum pair and a mixed generator
    {
        const GridSpec spec = spec_rank3();
        const FermionParamsN gn = solve_reduction_numeric(spec, seeds_m1());
        const TauCore<BigC> core = assign_taus(spec, gn, TauVariant::finite_n);
        for (int J = 1; J <= 4; ++J)
            for (int i = 0; i <= 3; ++i)
                CHECK(abs(eval_equation_core(J, i, core)).to_double() < 1e-25);
    }
    {
        const GridSpec s4 = spec_rank4();
        ReductionSeeds sd;
        sd.p_main = {Rat(3)};
        sd.p_aux = {Rat(4)};
        sd.b = {rat(1, 3)};
        sd.c = {rat(1, 7)};
        const FermionParamsN gn = solve_reduction_numeric(s4, sd);
        const TauCore<BigC> core = assign_taus(s4, gn, TauVariant::finite_n);
        for (int J = 1; J <= 4; ++J)
            for (int i = 0; i <= 4; ++i)
                CHECK(abs(eval_equation_core(J, i, core)).to_double() < 1e-25);
    }
}

TEST_CASE("constraint specializations of the parameter families") {
    const GridSpec spec = spec_rank3();
    const TimeArray y0;
    const FermionParams g1 = solve_reduction(spec, seeds_m1());
    const FermionParams g0 = solve_reduction(spec, seeds_m0());
    const VertexTimeGrid grid = build_time_grid(spec);

    // ---- boundary-identification point ---------------------------------
    const FermionParams ga2 =
        specialize_family(Family::A2, g1, spec, A2Limit{2, Rat(1)});
    CHECK(ga2.p_at(1) == gr(3));
    CHECK(ga2.p_at(2) == gr(4));
    CHECK(ga2.p_at(3) == gr(5));  // moved onto the interior constant
    CHECK(ga2.q_at(1).is_zero());
    CHECK(h_parameters(ga2, spec).c[0].is_zero());

    const TauCore<GaussRat> coreA = assign_taus(spec, ga2, TauVariant::finite_n);
    for (int J = 1; J <= 4; ++J)
        for (int i = 0; i <= 3; ++i)
            CHECK(eval_equation_core(J, i, coreA).is_zero());
    for (int J = 0; J <= 4; ++J)
        CHECK(coreA.tau[uz(J)][2] == coreA.tau[uz(J)][3]);

    // the degenerating charge component vanishes exactly at the point
    const TimeArray x0 = grid.at(JDomain::T0);
    CHECK(eval_F(0, 2, 1, x0, y0, g1) == gr(2142524, 63715575));
    CHECK(eval_F(0, 2, 1, x0, y0, ga2).is_zero());
    // components with a negative power of the vanished momentum are undefined
    CHECK_THROWS_AS(eval_F(0, 0, 1, x0, y0, ga2), LimitUndefined);

    // argument validation
    CHECK_THROWS_AS(specialize_family(Family::A2, g1, spec, A2Limit{1, Rat(1)}),
                    LimitUndefined);
    CHECK_THROWS_AS(specialize_family(Family::A2, g1, spec, A2Limit{3, Rat(1)}),
                    LimitUndefined);
    CHECK_THROWS_AS(specialize_family(Family::A2, g1, spec, A2Limit{2, Rat(0)}),
                    ZeroInput);
    CHECK_THROWS_AS(specialize_family(Family::A2, g0, spec), WrongFamily);
    CHECK_THROWS_AS(specialize_family(Family::A1, g1, spec), WrongFamily);
    {
        FermionParams clash = g1;
        clash.p = {gr(5), gr(4), gr(24, 5)};
        CHECK_THROWS_AS(specialize_family(Family::A2, clash, spec),
                        NonGenericInput);
    }

    // ---- mixed-sector kill ----------------------------------------------
    const FermionParams gc1 = specialize_family(Family::C1, g1, spec);
    CHECK(gc1.c[0].is_zero());
    CHECK(gc1.p == g1.p);
    const TauCore<GaussRat> coreC = assign_taus(spec, gc1, TauVariant::finite_n);
    for (int J = 0; J <= 4; ++J)
        CHECK(coreC.tau[uz(J)][0] == coreC.tau[uz(J)][1]);
    // the result is real, extractable, and satisfies the data-level constraint
    const TauData dc = tau_core_to_data(coreC);
    CHECK(constrain_family(Family::C1, dc).second.ok());
    CHECK(is_solution(dc));

    // the full-rank family passes through unchanged
    CHECK(same_params(specialize_family(Family::D1, g1, spec), g1));
    CHECK(same_params(specialize_family(Family::C1, g0, spec), g0));
}

TEST_CASE("parameter validation and serialization") {
    // size and genericity contracts
    {
        FermionParams g;
        g.N = 1;
        g.M = 0;  // b missing
        g.p = {gr(3), gr(4)};
        CHECK_THROWS_AS(validate_params(g), ConfigError);
    }
    {
        FermionParams g;
        g.N = 1;
        g.M = 0;
        g.b = {gr(1, 3)};
        g.p = {gr(3)};  // wrong length
        CHECK_THROWS_AS(validate_params(g), ConfigError);
    }
    {
        FermionParams g;
        g.N = 4;
        g.M = 3;  // enumeration cap
        g.b = std::vector<GaussRat>(4, gr(1, 3));
        g.c = std::vector<GaussRat>(3, gr(1, 7));
        g.p = std::vector<GaussRat>(11, gr(3));
        g.q = std::vector<GaussRat>(3, gr(1, 2));
        CHECK_THROWS_AS(validate_params(g), ConfigError);
    }
    auto genericity = [](std::vector<GaussRat> p, std::vector<GaussRat> q) {
        FermionParams g;
        g.N = 1;
        g.M = 2;
        g.b = {gr(1, 3)};
        g.c = {gr(1, 7), gr(1, 11)};
        g.p = std::move(p);
        g.q = std::move(q);
        return g;
    };
    const std::vector<GaussRat> qok = {gr(1, 2), gr(1, 3)};
    CHECK_THROWS_AS(
        validate_params(genericity({gr(0), gr(4), gr(5), gr(6)}, qok)),
        NonGenericInput);
    CHECK_THROWS_AS(
        validate_params(genericity({gr(3), gr(3), gr(5), gr(6)}, qok)),
        NonGenericInput);
    CHECK_THROWS_AS(
        validate_params(genericity({gr(3), gr(-3), gr(5), gr(6)}, qok)),
        NonGenericInput);
    const std::vector<GaussRat> pok = {gr(3), gr(4), gr(5), gr(6)};
    CHECK_THROWS_AS(validate_params(genericity(pok, {gr(0), gr(1, 3)})),
                    NonGenericInput);  // vanishing q only for M = 1
    CHECK_THROWS_AS(validate_params(genericity(pok, {gr(1, 3), gr(1, 3)})),
                    NonGenericInput);
    CHECK_THROWS_AS(validate_params(genericity(pok, {gr(1, 3), gr(-1, 3)})),
                    NonGenericInput);
    CHECK_NOTHROW(validate_params(genericity(pok, qok)));

    // JSON round trip preserves every field
    GridSpec spec = spec_rank3();
    const FermionParams g1 = solve_reduction(spec, seeds_m1());
    const FermionParams back =
        fermion_params_from_json(fermion_params_to_json(g1));
    CHECK(same_params(back, g1));
    // 1-based access bounds
    CHECK_THROWS_AS(g1.p_at(0), IndexOutOfRange);
    CHECK_THROWS_AS(g1.p_at(4), IndexOutOfRange);
    CHECK_THROWS_AS(g1.q_at(2), IndexOutOfRange);
}

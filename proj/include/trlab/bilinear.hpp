#pragma once
/**
 * @file bilinear.hpp
 * @brief The 4(n+1) bilinear tau-function equations behind the D-type map.
 *
 * Data: parameter vectors λ, κ (stored as D1 elements: λ_1..λ_n plus barred
 * partners), corner tau arrays τ^J_i (J = 0..4, i = 0..n), center arrays
 * S, W, N, E (i = 1..n-2), and scalars α, β.  The equations come in four
 * families <J,i> (J = 1..4, i = 0..n) with special displayed forms at
 * i ∈ {0, 1, n-1, n}.
 *
 * Facilities:
 *  - residual evaluation of any <J,i>, generic over the scalar ring (the
 *    equations are polynomial, so any ring with +,-,* works; complex and
 *    high-precision instantiations are used by the tau-solution module);
 *  - the unique-existence solver: given N, W, τ¹, τ², τ³, λ, κ, α, β it
 *    produces S, E, τ⁰, τ⁴ via a near-bidiagonal exact linear solve whose
 *    determinant is (k-l)·τ²₀·τ²ₙ·Π N_iW_i, plus consistency assertions on
 *    the six equations not used in the construction;
 *  - the data-level involutions (same symbols as the crystal-level ones) and
 *    the data-level action of the R map;
 *  - the tau-to-crystal bridge [μ; τ, C, τ'] with its inverse
 *    parameterization (one free parameter), the extraction of the quadruple
 *    (x, y, x', y'), the tau-ratio form of the V/U table, and the end-to-end
 *    check that R(x, y) = (x', y');
 *  - the cyclic A-type bilinear equation and the A2/C1 constraint handling.
 */

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "trlab/case_gen.hpp"
#include "trlab/crystal.hpp"
#include "trlab/errors.hpp"
#include "trlab/json_io.hpp"
#include "trlab/rat.hpp"
#include "trlab/tropical_r.hpp"

namespace trlab {

// ------------------------------------------------------------ data carriers

struct EquationId {
    int J;  // 1..4
    int i;  // 0..n
};

struct TauData {
    int n;
    CrystalElement lambda;  // D1 rank n: λ_i = x(i), λb_i = xbar(i)
    CrystalElement kappa;
    std::vector<Rat> S, W, N, E;          // index i-1 holds subscript i, 1..n-2
    std::array<std::vector<Rat>, 5> tau;  // tau[J][i], i = 0..n
    Rat alpha, beta;

    const Rat& la(int i) const { return lambda.x(i); }
    const Rat& lab(int i) const { return lambda.xbar(i); }
    const Rat& ka(int i) const { return kappa.x(i); }
    const Rat& kab(int i) const { return kappa.xbar(i); }
    Rat l() const { return level(lambda); }
    Rat k() const { return level(kappa); }
};

/// Ring-generic mirror of TauData (parameters lifted into the scalar type).
template <class S>
struct TauCore {
    int n = 0;
    std::vector<S> la, lab, ka, kab;  // subscript i at [i-1]; la/ka sized n,
                                      // lab/kab sized n-1
    std::array<std::vector<S>, 5> tau;
    std::vector<S> Sv, Wv, Nv, Ev;
    S alpha{}, beta{};
};

TauCore<Rat> to_core(const TauData& d);

/// Lift an exact core into another scalar ring via an embedding functor.
template <class S, class F>
TauCore<S> lift_core(const TauCore<Rat>& d, F&& f) {
    TauCore<S> out;
    out.n = d.n;
    auto conv = [&f](const std::vector<Rat>& v) {
        std::vector<S> w;
        w.reserve(v.size());
        for (const Rat& r : v) w.push_back(f(r));
        return w;
    };
    out.la = conv(d.la);
    out.lab = conv(d.lab);
    out.ka = conv(d.ka);
    out.kab = conv(d.kab);
    for (int J = 0; J < 5; ++J) out.tau[static_cast<std::size_t>(J)] = conv(d.tau[static_cast<std::size_t>(J)]);
    out.Sv = conv(d.Sv);
    out.Wv = conv(d.Wv);
    out.Nv = conv(d.Nv);
    out.Ev = conv(d.Ev);
    out.alpha = f(d.alpha);
    out.beta = f(d.beta);
    return out;
}

// --------------------------------------------------- residual evaluation

/// LHS - RHS of the displayed equation <J,i>; any commutative ring scalar.
template <class S>
S eval_equation_core(int J, int i, const TauCore<S>& d) {
    const int n = d.n;
    if (J < 1 || J > 4 || i < 0 || i > n)
        throw IndexOutOfRange("equation id <J,i> needs J in 1..4, i in 0..n");
    auto t = [&d](int JJ, int ii) -> const S& {
        return d.tau[static_cast<std::size_t>(JJ)][static_cast<std::size_t>(ii)];
    };
    auto la = [&d](int ii) -> const S& { return d.la[static_cast<std::size_t>(ii - 1)]; };
    auto ka = [&d](int ii) -> const S& { return d.ka[static_cast<std::size_t>(ii - 1)]; };
    auto lab = [&d](int ii) -> const S& { return d.lab[static_cast<std::size_t>(ii - 1)]; };
    auto kab = [&d](int ii) -> const S& { return d.kab[static_cast<std::size_t>(ii - 1)]; };
    auto Sa = [&d](int ii) -> const S& { return d.Sv[static_cast<std::size_t>(ii - 1)]; };
    auto Wa = [&d](int ii) -> const S& { return d.Wv[static_cast<std::size_t>(ii - 1)]; };
    auto Na = [&d](int ii) -> const S& { return d.Nv[static_cast<std::size_t>(ii - 1)]; };
    auto Ea = [&d](int ii) -> const S& { return d.Ev[static_cast<std::size_t>(ii - 1)]; };
    const S& al = d.alpha;
    const S& be = d.beta;

    switch (J) {
        case 1:
            if (i == 0)
                return kab(1) * Na(1) * t(4, 1) - lab(1) * Ea(1) * t(2, 1) -
                       al * t(0, 0) * t(1, 0);
            if (i == 1)
                return ka(1) * Na(1) * t(4, 0) - la(1) * Ea(1) * t(2, 0) -
                       al * t(0, 1) * t(1, 1);
            if (i == n - 1)
                return ka(n - 1) * ka(n) * Ea(n - 2) * t(2, n) -
                       la(n - 1) * la(n) * Na(n - 2) * t(4, n) -
                       al * t(0, n - 1) * t(1, n);
            if (i == n)
                return ka(n - 1) * Ea(n - 2) * t(2, n - 1) -
                       la(n - 1) * Na(n - 2) * t(4, n - 1) -
                       al * t(0, n) * t(1, n - 1);
            return ka(i) * Ea(i - 1) * Na(i) - la(i) * Na(i - 1) * Ea(i) -
                   al * t(0, i) * t(1, i);
        case 2:
            if (i == 0)
                return ka(1) * Na(1) * t(3, 1) + lab(1) * Wa(1) * t(1, 1) -
                       be * t(0, 0) * t(2, 0);
            if (i == 1)
                return kab(1) * Na(1) * t(3, 0) + la(1) * Wa(1) * t(1, 0) -
                       be * t(0, 1) * t(2, 1);
            if (i == n - 1)
                return ka(n) * kab(n - 1) * Wa(n - 2) * t(1, n - 1) +
                       la(n - 1) * Na(n - 2) * t(3, n - 1) -
                       be * t(0, n - 1) * t(2, n - 1);
            if (i == n)
                return kab(n - 1) * Wa(n - 2) * t(1, n) +
                       la(n - 1) * la(n) * Na(n - 2) * t(3, n) -
                       be * t(0, n) * t(2, n);
            return kab(i) * Wa(i - 1) * Na(i) + la(i) * Na(i - 1) * Wa(i) -
                   be * t(0, i) * t(2, i);
        case 3:
            if (i == 0)
                return ka(1) * Sa(1) * t(2, 1) - la(1) * Wa(1) * t(4, 1) -
                       al * t(0, 0) * t(3, 0);
            if (i == 1)
                return kab(1) * Sa(1) * t(2, 0) - lab(1) * Wa(1) * t(4, 0) -
                       al * t(0, 1) * t(3, 1);
            if (i == n - 1)
                return kab(n - 1) * Wa(n - 2) * t(4, n) -
                       lab(n - 1) * Sa(n - 2) * t(2, n) -
                       al * t(0, n - 1) * t(3, n);
            if (i == n)
                return ka(n) * kab(n - 1) * Wa(n - 2) * t(4, n - 1) -
                       la(n) * lab(n - 1) * Sa(n - 2) * t(2, n - 1) -
                       al * t(0, n) * t(3, n - 1);
            return kab(i) * Wa(i - 1) * Sa(i) - lab(i) * Sa(i - 1) * Wa(i) -
                   al * t(0, i) * t(3, i);
        default:  // J == 4
            if (i == 0)
                return kab(1) * Sa(1) * t(1, 1) + la(1) * Ea(1) * t(3, 1) -
                       be * t(0, 0) * t(4, 0);
            if (i == 1)
                return ka(1) * Sa(1) * t(1, 0) + lab(1) * Ea(1) * t(3, 0) -
                       be * t(0, 1) * t(4, 1);
            if (i == n - 1)
                return ka(n - 1) * Ea(n - 2) * t(3, n - 1) +
                       la(n) * lab(n - 1) * Sa(n - 2) * t(1, n - 1) -
                       be * t(0, n - 1) * t(4, n - 1);
            if (i == n)
                return ka(n - 1) * ka(n) * Ea(n - 2) * t(3, n) +
                       lab(n - 1) * Sa(n - 2) * t(1, n) -
                       be * t(0, n) * t(4, n);
            return ka(i) * Ea(i - 1) * Sa(i) + lab(i) * Sa(i - 1) * Ea(i) -
                   be * t(0, i) * t(4, i);
    }
}

/// Rat facade over the generic core.
Rat eval_equation(const EquationId& id, const TauData& d);

/// All 4(n+1) residuals, ordered J=1..4 outer, i=0..n inner.
std::vector<Rat> residual_vector(const TauData& d);
bool is_solution(const TauData& d);

/// The two extra vanishing combinations around i=0 and i=n:
///   α λb₁ κb₁ τ³₀τ¹₁ + β λ₁ κb₁ τ²₀τ⁴₁ − α λ₁κ₁ τ¹₀τ³₁ − β λb₁κ₁ τ⁴₀τ²₁
///   α τ³ₙ₋₁τ¹ₙ + β λₙ τ⁴ₙτ²ₙ₋₁ − α λₙκₙ τ¹ₙ₋₁τ³ₙ − β κₙ τ²ₙτ⁴ₙ₋₁
Rat null_combination_0(const TauData& d);
Rat null_combination_n(const TauData& d);

// ----------------------------------------------------------------- solver

/// The near-bidiagonal linear system (unknowns τ⁴₀, E₁..E_{n-2}, τ⁴ₙ,
/// S_{n-2}..S₁) assembled as a dense matrix for determinant cross-checks.
struct BodySystem {
    std::vector<std::vector<Rat>> A;  // (2n-2) x (2n-2)
    std::vector<Rat> rhs;             // includes the factor α
};

BodySystem build_body_system(int n, const std::vector<Rat>& Nv,
                             const std::vector<Rat>& Wv,
                             const std::vector<Rat>& tau1,
                             const std::vector<Rat>& tau2,
                             const std::vector<Rat>& tau3,
                             const CrystalElement& lambda,
                             const CrystalElement& kappa, const Rat& alpha,
                             const Rat& beta);

/// Closed form (k-l) τ²₀ τ²ₙ Π N_iW_i of the system determinant.
Rat body_det_formula(int n, const std::vector<Rat>& Nv,
                     const std::vector<Rat>& Wv, const std::vector<Rat>& tau2,
                     const CrystalElement& lambda, const CrystalElement& kappa);

/// Unique completion: fills S, E, τ⁰, τ⁴ so that all 4(n+1) equations hold.
TauData solve_unique(int n, const std::vector<Rat>& Nv,
                     const std::vector<Rat>& Wv, const std::vector<Rat>& tau1,
                     const std::vector<Rat>& tau2, const std::vector<Rat>& tau3,
                     const CrystalElement& lambda, const CrystalElement& kappa,
                     const Rat& alpha, const Rat& beta);

/// Seeded random solved data (positive inputs, distinct parameter levels).
TauData random_tau_data(SplitMix64& rng, int n, long height = 9);

/// All-unit tau configuration at parameters λ_i = L-a_i, λb_i = L+a_i,
/// κ_i = K-a_i, κb_i = K+a_i, λ_n = κ_n = 1, α = K-L, β = K+L.
TauData unit_parameter_data(int n, const Rat& K, const Rat& L,
                            const std::vector<Rat>& a);

// -------------------------------------------------- involutions on the data

/// Data-level σ_1 / σ_n / σ_*; automorphisms of the equation set (residuals
/// permute by <J,0>↔<J,1> for σ_1, <J,n-1>↔<J,n> for σ_n, and for σ_*
/// <1,i>↦-<3,ι(i)>, <2,i>↦<2,ι(i)>, <4,i>↦<4,ι(i)> with ι swapping n-1↔n).
TauData apply_sigma_data(SigmaKind a, const TauData& d);

/// Data-level action of the R map itself: λ↔κ, τ²↔τ⁴, W↔S, N↔E, α↦-α.
TauData r_on_data(const TauData& d);

// -------------------------------------------------------- tau-crystal bridge

/// [μ; τ, C, τ']: the D1 element whose coordinates are the displayed
/// tau-ratios (n=3 uses the modified variant); ℓ(result) = ℓ(μ)^{-1}.
CrystalElement build_element(const CrystalElement& mu,
                             const std::vector<Rat>& tau,
                             const std::vector<Rat>& C,
                             const std::vector<Rat>& tauP);

struct Quadruple {
    CrystalElement x, y, xp, yp;
};

/// x=[λ;τ³,W,τ²], y=[κ;τ²,N,τ¹], x'=[κ;τ³,S,τ⁴], y'=[λ;τ⁴,E,τ¹].
Quadruple extract_quadruple(const TauData& d);

enum class TauSide { tau, tauP };

struct ElementTaus {
    std::vector<Rat> tau;   // index 0..n
    std::vector<Rat> C;     // index 1..n-2 at [i-1]
    std::vector<Rat> tauP;  // index 0..n
};

/// Solve [μ; τ, C, τ'] = z for the non-fixed arrays given the fixed side and
/// the free parameter t (the 0-entry of the solved tau array); requires
/// ℓ(z)·ℓ(μ) = 1 and reproduces z exactly on build_element.
ElementTaus parameterize_element(const CrystalElement& z,
                                 const CrystalElement& mu,
                                 const std::vector<Rat>& tau_fixed,
                                 TauSide side, const Rat& t);

/// The tau-ratio expressions for the V/U table, γ = (k-l)β/(lkα); equals
/// vu_table(extracted x, y) entrywise on solved data.
VUTable uv_from_tau(const TauData& d);

struct BilinearizationReport {
    Quadruple data;            // extracted x, y, x', y'
    RResult mapped;            // r_typeD(x, y)
    std::vector<Rat> residual; // coordinate differences, x then y block
    bool pass;
};

/// Theorem-level check that the extracted quadruple satisfies R(x,y)=(x',y').
BilinearizationReport verify_bilinearization(const TauData& d);

// ----------------------------------------------------------- A-type bilinear

/// Cyclic A-type equation residual λ_iτ²_{i-1}τ⁴_i − κ_iτ²_iτ⁴_{i-1}
/// − ατ¹_iτ³_{i-1}; all indices mod n.
Rat hirota_A(int i, const CrystalElement& lambdaA, const CrystalElement& kappaA,
             const std::vector<Rat>& tau2, const std::vector<Rat>& tau4,
             const std::vector<Rat>& tau1, const std::vector<Rat>& tau3,
             const Rat& alpha);

// ------------------------------------------------------------- A2/C1 data

struct ConstraintReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Enforce the reduction constraints (A2: λ_n=κ_n=1, τ^J_{n-1}=τ^J_n;
/// C1 additionally λ_1=λb_1, κ_1=κb_1, τ^J_0=τ^J_1), reporting which
/// constraints the input violated.  Enforcement copies the lower-index
/// value into the higher slot (and the unbarred parameter into the barred).
std::pair<TauData, ConstraintReport> constrain_family(Family f,
                                                      const TauData& d);

// ------------------------------------------------------------------- JSON

Json tau_data_to_json(const TauData& d);
TauData tau_data_from_json(const Json& j);

}  // namespace trlab

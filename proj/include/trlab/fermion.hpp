#pragma once
/**
 * @file fermion.hpp
 * @brief Free-fermion tau functions on a two-dimensional time grid.
 *
 * This module evaluates vacuum expectation values of exponentials of
 * quadratic fermion Hamiltonians as finite subset sums over momentum
 * parameters (the one-component values f_l and the two-component values
 * F_{l1,l2;l}), assembles them into the tau arrays consumed by the bilinear
 * module, and exposes the classical bilinear identities used to certify the
 * construction.  Scalars are either exact Gaussian rationals or
 * arbitrary-precision complex floats.
 *
 * Time variables are finite formal combinations x = Σ_k c_k·ε(a_k) with
 * integer coefficients c_k, where ε(a) = (a, a²/2, a³/3, …).  The generating
 * identity exp(ξ(ε(a), p)) = 1/(1 − a·p) turns every exponential of a time
 * array into a finite product of linear factors, so all series are evaluated
 * in closed form and nothing is ever truncated.
 */

#include <array>
#include <map>
#include <string>
#include <vector>

#include "trlab/bigfloat.hpp"
#include "trlab/bilinear.hpp"
#include "trlab/errors.hpp"
#include "trlab/gauss_rat.hpp"
#include "trlab/json_io.hpp"
#include "trlab/rat.hpp"

namespace trlab {

// ---------------------------------------------------------------------------
// Time arrays
// ---------------------------------------------------------------------------

/// Finite formal combination Σ_k c_k·ε(a_k): scale a_k ↦ integer coefficient.
/// Invariants: no zero coefficients, no zero scales.  The combination
/// ε̃(a) := −ε(−a) is stored through the same basis.
struct TimeArray {
    std::map<Rat, long long> terms;

    /// Merge `coeff` copies of ε(a) into the combination, dropping the term
    /// if the total coefficient reaches zero.  Throws ZeroScale when a = 0.
    void add_term(const Rat& a, long long coeff);

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const TimeArray& a, const TimeArray& b) {
        return a.terms == b.terms;
    }
    friend bool operator!=(const TimeArray& a, const TimeArray& b) { return !(a == b); }

    std::string to_string() const;
};

/// ε(a) = (a, a²/2, a³/3, …).  Throws ZeroScale when a = 0.
TimeArray eps(const Rat& a);
/// ε̃(a) = (a, −a²/2, a³/3, …) = −ε(−a).  Throws ZeroScale when a = 0.
TimeArray eps_tilde(const Rat& a);

TimeArray operator+(const TimeArray& x, const TimeArray& y);
TimeArray operator-(const TimeArray& x, const TimeArray& y);
TimeArray operator-(const TimeArray& x);

/// Sign-alternating involution x̃ with x̃_j = (−1)^{j+1} x_j; on the ε basis
/// it maps c·ε(a) ↦ −c·ε(−a), so ε(a)~ = ε̃(a).
TimeArray time_tilde(const TimeArray& x);
/// x is odd iff x̃ = x (only odd-index entries of the coefficient sequence).
bool time_is_odd(const TimeArray& x);

Json time_array_to_json(const TimeArray& x);
TimeArray time_array_from_json(const Json& j);

/// exp(ξ(x, p)) = Π_k (1 − a_k·p)^{−c_k}.  Throws PoleAtMomentum when a
/// factor with positive coefficient vanishes; a vanishing factor raised to a
/// negative c_k legitimately gives 0.  S is GaussRat or BigC.
template <class S>
S exp_xi(const TimeArray& x, const S& p);

// ---------------------------------------------------------------------------
// Grid specification
// ---------------------------------------------------------------------------

/// Rank and spectral data shared by the tau assignments: the rank n ≥ 3, the
/// spectral values K and L, and the interior constants a_2, …, a_{n−1}
/// (a_1 = 0 always).  These determine the crystal parameters
///   λ_i = L − a_i, λ̄_i = L + a_i, κ_i = K − a_i, κ̄_i = K + a_i (i ≤ n−1),
///   λ_n = κ_n = 1, α = K − L, β = K + L,
/// and the component shifts z_1 = 0, z_j = z_{j−1} − ε(1/a_j) (2 ≤ j ≤ n−1).
struct GridSpec {
    int n = 3;
    Rat Kval, Lval;
    std::vector<Rat> a;  ///< a_2..a_{n−1} at [k−2]; size n−2.
    TimeArray eta;       ///< odd base time attached to the grid (default 0)

    /// a_i for 1 ≤ i ≤ n−1 (a_1 = 0).  Throws IndexOutOfRange.
    Rat a_of(int i) const;
    /// (a_1, …, a_{n−1}) including the implicit a_1 = 0; the parameter vector
    /// expected by the bilinear module's constructors.
    std::vector<Rat> a_full() const;
};

/// Rank/size checks, nonzero scales, nonvanishing crystal parameters
/// (λ_i, λ̄_i, κ_i, κ̄_i, α, β all nonzero) and oddness of eta.
/// Throws ConfigError / NonGenericInput / OddnessViolation.
void validate_grid(const GridSpec& spec);

Json grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const Json& j);

/// The nine time-grid domains around one vertex: the center T0, the four
/// corners T1..T4 and the four edge midpoints N, S, W, E.
enum class JDomain { T0 = 0, T1, T2, T3, T4, N, S, W, E };

constexpr std::array<JDomain, 9> kAllDomains = {
    JDomain::T0, JDomain::T1, JDomain::T2, JDomain::T3, JDomain::T4,
    JDomain::N,  JDomain::S,  JDomain::W,  JDomain::E};

const char* domain_name(JDomain J);

/// Base times x^J for the nine domains around a single vertex plus the
/// component shifts z_j.
struct VertexTimeGrid {
    int n = 0;
    std::array<TimeArray, 9> base;  ///< indexed by static_cast<int>(JDomain)
    std::vector<TimeArray> z;       ///< z_1..z_{n−1} at [j−1]; z_1 = 0

    const TimeArray& at(JDomain J) const { return base[static_cast<int>(J)]; }
    /// x^J_j = x^J + z_j for 1 ≤ j ≤ n−1.  Throws IndexOutOfRange.
    TimeArray component(JDomain J, int j) const;
};

/// Builds the nine base times from x¹ = spec.eta via
///   x^N = x¹ − ε(1/K),   x^E = x¹ − ε(1/L),
///   x² = x^N − ε̃(1/K),  x⁰ = x^N − ε(1/L),  x⁴ = x^E − ε̃(1/L),
///   x^W = x⁰ − ε̃(1/K),  x^S = x⁰ − ε̃(1/L),  x³ = x^W − ε̃(1/L).
/// The result satisfies the twelve two-step recursions
///   x^W − x³ = x⁰ − x^S = x^E − x⁴ = ε̃(1/L),
///   x² − x^W = x^N − x⁰ = x¹ − x^E = ε(1/L),
///   x^N − x² = x⁰ − x^W = x^S − x³ = ε̃(1/K),
///   x¹ − x^N = x^E − x⁰ = x⁴ − x^S = ε(1/K),
/// and the corner times x¹..x⁴ are odd whenever eta is.
VertexTimeGrid build_time_grid(const GridSpec& spec);

/// Base times over a finite lattice window for the vertex model.  Faces live
/// on the half-integer grid and are addressed by doubled coordinates
/// (s2, t2) = (2s, 2t).  Vertical line s′ carries the spectral value K(s′),
/// horizontal line t′ carries L(t′); only the lines present in the maps
/// contribute (restricting to a finite window amounts to absorbing the rest
/// into the base time, which stays a valid odd choice):
///   x(s,t) = base + Σ_{t′>t} ε(1/L(t′)) + Σ_{t′≥t} ε̃(1/L(t′))
///                 + Σ_{s′<s} ε(1/K(s′)) + Σ_{s′≤s} ε̃(1/K(s′)).
struct LatticeTimeGrid {
    TimeArray base;
    std::map<int, Rat> Kline, Lline;
    std::vector<TimeArray> z;  ///< z_1..z_{n−1} at [j−1]

    /// x(s,t) at doubled coordinates (s2, t2).
    TimeArray face_time(int s2, int t2) const;
    /// x_j(s,t) = x(s,t) + z_j for 1 ≤ j ≤ n−1.  Throws IndexOutOfRange.
    TimeArray component(int s2, int t2, int j) const;
};

/// Lattice variant of the time grid: per-line spectral values over a window.
/// Throws ZeroScale on zero levels, OddnessViolation if base is not odd.
LatticeTimeGrid build_time_grid(const GridSpec& spec, const std::map<int, Rat>& Kline,
                                const std::map<int, Rat>& Lline, const TimeArray& base);

// ---------------------------------------------------------------------------
// Momentum parameter sets
// ---------------------------------------------------------------------------

/// N two-momentum neutral pairs and M mixed pairs.  Momenta are stored as
///   p[μ−1] = p_μ (1 ≤ μ ≤ 2N+M),   q[j−1] = q_j (1 ≤ j ≤ M),
/// with the pairing conventions p̄_i = p_{2N+1−i} (partner of pair i) and
/// p̃_j = p_{2N+M+1−j} (the p-side momentum of mixed pair j).  Couplings are
/// b[i−1] (pairs) and c[j−1] (mixed pairs).  The same array interprets as
/// the one-component parameterization (for f_l) and the two-component one
/// (for F_{l1,l2;l}); sharing it across both is what makes the neutral
/// decomposition lemmas hold.
template <class S>
struct FermionParamsT {
    int N = 0, M = 0;
    std::vector<S> b, c;  ///< couplings, sizes N and M
    std::vector<S> p, q;  ///< momenta, sizes 2N+M and M

    const S& p_at(int mu) const;  ///< 1-based access; IndexOutOfRange
    const S& q_at(int j) const;   ///< 1-based access; IndexOutOfRange
    int pbar(int i) const { return 2 * N + 1 - i; }
    int ptilde(int j) const { return 2 * N + M + 1 - j; }
};

using FermionParams = FermionParamsT<GaussRat>;   ///< exact scalar
using FermionParamsN = FermionParamsT<BigC>;      ///< floating scalar

/// Size and genericity checks: array sizes match (N, M); all p_μ nonzero and
/// pairwise distinct with p_μ + p_ν ≠ 0; q_j pairwise distinct with
/// q_μ + q_ν ≠ 0 (q_1 = 0 is allowed only when M = 1: the degeneration
/// point, where evaluation takes the analytic limit); N + M ≤ 6.
/// Throws ConfigError / NonGenericInput.
template <class S>
void validate_params(const FermionParamsT<S>& g);

Json fermion_params_to_json(const FermionParams& g);
FermionParams fermion_params_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Expectation values
// ---------------------------------------------------------------------------

/// One-component expectation value f_l, l ∈ {0, 1}:
///   f_l = Σ_{I⊆{1..N}, J⊆{1..M}} ε_{l,J} 2^{−|I|−|J|} b_I(x) c_J(x,y)
///         · Δ⁻_K(p) Δ⁻_J(q) / (Δ⁺_K(p) Δ⁺_J(q)),      K = I ⊔ Ī ⊔ J̃,
/// with ε_{l,J} = 1 for |J| even and i(−1)^l for |J| odd.  The sum equals
/// the underlying expectation value when x and y are odd (a premise of the
/// decomposition lemmas, enforced by their checkers, not here).  M = 0 makes
/// the result independent of l.  Throws DeltaPole on vanishing Δ⁺ factors.
template <class S>
S eval_f(int l, const TimeArray& x, const TimeArray& y, const FermionParamsT<S>& g);

/// Two-component expectation value F_{l1,l2;l}:
///   F = Σ (−1)^{|I′|+(|I|+|I′|)|J|} b_I b′_{I′} c_J c′_{J′}
///       · Δ^{l1,l}_{K,K′}(p) Δ^{l2,−l}_{J′,J}(q),
///   K = I ⊔ Ī′ ⊔ J̃, K′ = I′ ⊔ Ī ⊔ J̃′, subject to |J′| − |J| = l.
/// The sum represents the expectation value for odd y (x is unrestricted);
/// oddness is a caller premise.  Returns 0 when no subsets satisfy the
/// charge constraint (|l| > M).  When M = 1 and q_1 = 0 the value is the
/// analytic limit q_1 → 0: each contributing class carries a single power of
/// q_1 which is substituted directly — classes with a positive power vanish;
/// a negative power with nonzero coupling has no limit (LimitUndefined).
/// Throws DeltaPole on vanishing denominators or 0^{negative} powers.
template <class S>
S eval_F(int l1, int l2, int l, const TimeArray& x, const TimeArray& y,
         const FermionParamsT<S>& g);

/// F with every pair index of the parameter set lowered by one (the shift
/// automorphism applied to the Hamiltonian).  Evaluated through the index
/// identity: shifting parameters equals raising (l1, l2) by one each.
template <class S>
S eval_F_shifted(int l1, int l2, int l, const TimeArray& x, const TimeArray& y,
                 const FermionParamsT<S>& g);

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

/// The classical three-term bilinear identities (bl1–bl4) and the auxiliary
/// two-term identity (blaux) satisfied by the expectation values for every
/// parameter set.  All shifts are by ε(1/b_i).
enum class FermionIdentity { bl1, bl2, bl3, bl4, blaux };

/// Residual of one identity instance (exactly zero in exact mode, zero to
/// working precision in numeric mode).  For bl1/bl2/bl3 a zero b_i encodes
/// 1/b_i = 0: the corresponding shift is absent and the prefactor uses 0;
/// bl4 shifts by all three ε(1/b_i), so its b's must be nonzero (ZeroScale).
/// blaux uses only b1, b2 and ignores (l1, l2, l).  y is the second time
/// axis, default 0.
template <class S>
S check_bilinear_identities(FermionIdentity which, int l1, int l2, int l,
                            const TimeArray& x, const Rat& b1, const Rat& b2,
                            const Rat& b3, const FermionParamsT<S>& g,
                            const TimeArray& y = TimeArray());

/// Decompositions of two-component expectation values into products of
/// one-component ones when the two parameter sets realize the same quadratic
/// Hamiltonian on both sides.  Oddness premises are enforced here
/// (OddnessViolation).  jm76: x odd, six residuals
///   F₁,₁ − f₀f₁,  F₀,₀ − f₀f₁,  F₀,₁ − (f₀²+f₁²)/2,  F₁,₀ − (f₀²+f₁²)/2,
///   F₀,₁;₁ − (i/2)(f₀²−f₁²),  F₁,₀;₋₁ + (i/2)(f₀²−f₁²).
/// sapix: x such that x₊ = x + ε(1/c) and x₋ = x − ε̃(1/c) are odd; four
/// residuals
///   2F₀,₁(x) − [f₀(x₊)f₀(x₋) + f₁(x₊)f₁(x₋)],
///   −2i·F₀,₁;₁(x) − [f₀(x₊)f₀(x₋) − f₁(x₊)f₁(x₋)],
///   2F₀,₀(x) − [f₀(x₊)f₁(x₋) + f₁(x₊)f₀(x₋)],
///   (2i/c)·F₋₁,₁;₁(x) − [f₀(x₊)f₁(x₋) − f₁(x₊)f₀(x₋)].
/// `gPrime` drives the one-component values, `g` the two-component ones;
/// passing the same struct twice realizes the required relation.
enum class NeutralKind { jm76, sapix };

template <class S>
std::vector<S> check_neutral_decomposition(NeutralKind which, const TimeArray& x,
                                           const Rat& c, const FermionParamsT<S>& g,
                                           const FermionParamsT<S>& gPrime,
                                           const TimeArray& y = TimeArray());

// ---------------------------------------------------------------------------
// Reduction of the momentum family
// ---------------------------------------------------------------------------

/// A(t) = Π_{k=2}^{n−1} (1 − t/a_k).
template <class S>
S poly_A(const GridSpec& spec, const S& t);

/// P(t) = t²·A(t)·A(−t) = t²·Π_k (1 − t²/a_k²); an even polynomial, so a
/// polynomial in u = t².  The reduction constrains P(p_i) = P(p̄_i) for every
/// neutral pair and P(p̃_j) = q_j² for every mixed pair.
template <class S>
S reduction_value(const GridSpec& spec, const S& t);

/// Momentum seeds: the free halves of each pair.  Partners p̄_i and the
/// mixed q_j are solved for.
struct ReductionSeeds {
    std::vector<Rat> p_main;  ///< p_1..p_N
    std::vector<Rat> p_aux;   ///< p̃_1..p̃_M (stored into p[2N+M−j])
    std::vector<Rat> b, c;    ///< couplings, sizes N and M
};

/// Exact mode: for each seed p_i finds a rational u with P(√u) = P(p_i),
/// u ≠ p_i², and takes p̄_i = √u (NoRationalPartner when no rational choice
/// exists); q_j is the exact square root of P(p̃_j) (same error).  Partners
/// must not collide with existing momenta (NonGenericInput).
FermionParams solve_reduction(const GridSpec& spec, const ReductionSeeds& seeds);

/// Floating mode at the working precision: polynomial root extraction with
/// Newton polishing (RootFindFailure when no candidate converges).
FermionParamsN solve_reduction_numeric(const GridSpec& spec, const ReductionSeeds& seeds);

/// Coupling transport to the lower-rank parameter set with the same momenta:
///   b′_i = −(p̄_i A(p̄_i)) / (p_i A(−p_i)) · b_i,
///   c′_j = +(p̃_j A(p̃_j)) / q_j · c_j.
/// Pairs with zero coupling pass through unchanged and are exempt from the
/// constraint check; otherwise the reduction must hold (ReductionViolated;
/// numeric mode checks it to 1e−30 relative).  Throws PoleInA when
/// A(−p_i) = 0, or when q_j = 0 with A(p̃_j) ≠ 0; the removable 0/0 at
/// q_j = 0, A(p̃_j) = 0 takes its limit value c′_j = 0.
template <class S>
FermionParamsT<S> h_parameters(const FermionParamsT<S>& g, const GridSpec& spec);

// ---------------------------------------------------------------------------
// Tau assignments
// ---------------------------------------------------------------------------

enum class TauVariant { finite_n, infinite_n };

/// Fills a TauCore from expectation values on the vertex time grid built
/// from `spec`:
///   edge components X_j = F₁,₁(x^X + z_j)              (X ∈ {N,S,W,E}, 1 ≤ j ≤ n−2),
///   τ^J_j = f_j(x^J, y)                                 (J ∈ {1..4}, j ∈ {0,1}),
///   τ^J_j = F₁,₁(x^J + z_j)                             (2 ≤ j ≤ n−2),
///   τ⁰_j = F₀,₁(x⁰) + (−1)^j·i·F₀,₁;₁(x⁰)               (j ∈ {0,1}),
///   τ⁰_j = F₁,₁(x⁰ + z_{j−1})                           (2 ≤ j ≤ n−2).
/// finite_n additionally transports couplings through h_parameters (so the
/// parameter set must satisfy the reduction) and completes the boundary:
///   τ^J_{n−1} = f₁(x^J, y; h),  τ^J_n = f₀(x^J, y; h),
///   τ⁰_{n−1,n} = F₁,₁(x⁰+z_{n−2}) ∓ (i·a_{n−1}/(K·L))·F₀,₂;₁(x⁰+z_{n−2})
/// (the last two F's with the index-shifted parameter set, realized by
/// raising (l1, l2)).  infinite_n leaves the j ∈ {n−1, n} corner slots and
/// λ_n, κ_n at 1; only the interior equations 1 ≤ i ≤ n−2 are meaningful
/// for it (see interior_residuals).  Crystal parameters are set from the
/// grid: λ_i = L − a_i, …, α = K − L, β = K + L.  y is the second time axis
/// (default 0); eta and y must be odd (OddnessViolation).
template <class S>
TauCore<S> assign_taus(const GridSpec& spec, const FermionParamsT<S>& g,
                       TauVariant variant, const TimeArray& y = TimeArray());

/// Residuals of the interior bilinear equations ⟨J,i⟩, J ∈ {1..4},
/// 1 ≤ i ≤ n−2, in (J, i) row-major order.
template <class S>
std::vector<S> interior_residuals(const TauCore<S>& core);

/// Extraction into the rational container consumed by the bilinear module's
/// checkers.  Throws ConfigError if any imaginary part is nonzero.
TauData tau_core_to_data(const TauCore<GaussRat>& core);

// ---------------------------------------------------------------------------
// Constraint specializations
// ---------------------------------------------------------------------------

/// Degeneration data for the two-momentum mixed sector: the index m of the
/// interior constant the momentum p̃_1 is moved to, and the (recorded but
/// limit-irrelevant) approach-path constant (1 − p̃_1/a_m)/q_1².
struct A2Limit {
    int m = 2;
    Rat path_constant = Rat(1);  ///< must be nonzero (ZeroInput)
};

/// Specializes a parameter family to a constrained subfamily.
///   C1: kills the mixed sector (all c_j = 0); the assigned taus then
///       satisfy τ^J_0 = τ^J_1.
///   A2 (requires M = 1, WrongFamily otherwise): moves the mixed momenta to
///       the degeneration point q_1 = 0, p̃_1 = a_m with 2 ≤ m ≤ n−1
///       (LimitUndefined otherwise); expectation values become the analytic
///       q_1 → 0 limits and the assigned taus satisfy τ^J_{n−1} = τ^J_n.
///   D1: returns the input unchanged; A1 is not a constraint of this system
///       (WrongFamily).
/// Collisions of a_m with existing momenta throw NonGenericInput.
template <class S>
FermionParamsT<S> specialize_family(Family target, const FermionParamsT<S>& g,
                                    const GridSpec& spec, const A2Limit& limit = A2Limit());

}  // namespace trlab

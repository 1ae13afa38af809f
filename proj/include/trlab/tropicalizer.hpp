#pragma once
/**
 * @file tropicalizer.hpp
 * @brief Max-plus versions of the subtraction-free R maps and the scaling
 *        consistency check tying them back to the rational maps.
 *
 * Convention (repo-wide): ⊕ = max, ⊗ = +, ⊘ = −.  Under the substitution
 * x_i = e^{X_i/ε}, a subtraction-free rational expression f satisfies
 *   ε·log f(e^{X/ε}) − f_trop(X) ∈ [−ε·log R, +ε·log S]
 * where (S, R) are the monomial-count certificates carried by CountPair,
 * so the tropical maps below are the ε → 0⁺ limits of the rational ones,
 * with an explicit per-ε error budget rather than an asymptotic promise.
 *
 * The cyclic map tropicalizes directly (its formulas are globally
 * subtraction-free).  The full-family map tropicalizes through the closed
 * positive forms of the auxiliary table; those forms agree with the rational
 * map for either level ordering, but their tropicalization is adopted as
 * *the* tropical map only on the domain level(X) > level(Y) (strict, in the
 * tropical sense of coordinate sums).  The opposite ordering is reached
 * through the inversion relation, and equal levels are rejected.
 */

#include <array>
#include <vector>

#include "trlab/crystal.hpp"
#include "trlab/json_io.hpp"
#include "trlab/tropval.hpp"

namespace trlab {

// ---------------------------------------------------------------- elements

/// CrystalElement shape with max-plus coordinates; map inputs must be finite.
struct TropElement {
    Family family = Family::A1;
    int n = 0;
    std::vector<TropVal> coords;

    const TropVal& at(std::size_t k) const { return coords[k]; }
    friend bool operator==(const TropElement& a, const TropElement& b) {
        return a.family == b.family && a.n == b.n && a.coords == b.coords;
    }
};

/// Validated constructor: coordinate count must match the family layout
/// (cyclic: n; full: 2n-1); every value must be finite (NonFiniteInput).
TropElement make_trop_element(Family f, int n, std::vector<TropVal> coords);

/// Integer convenience for tests and the CLI.
TropElement make_trop_element(Family f, int n, const std::vector<long>& coords);

Json trop_element_to_json(const TropElement& e);
TropElement trop_element_from_json(const Json& j);

/// Tropical level: the coordinate sum (max-plus product of all coordinates).
TropVal trop_level(const TropElement& e);

// -------------------------------------------------------------------- maps

/// Tropicalized cyclic polynomial TP_i(X, Y), indices mod n.
TropVal trop_p(int i, const TropElement& X, const TropElement& Y);

struct TropRResult {
    TropElement x_out, y_out;
};

/// The max-plus R map.  Families: cyclic (any rank, unrestricted) and full
/// (level(X) > level(Y) required; LevelMismatch otherwise).  The reduced
/// families are not given tropical forms here (WrongFamily).
TropRResult trop_r(const TropElement& X, const TropElement& Y);

struct TropYbeReport {
    std::array<TropElement, 3> left;   // R1 R2 R1 (X,Y,Z)
    std::array<TropElement, 3> right;  // R2 R1 R2 (X,Y,Z)
    bool equal = false;
};

/// Both compositions in the max-plus semiring, exact comparison.  For the
/// full family, strictly decreasing levels keep all six applications inside
/// the map's domain.
TropYbeReport trop_ybe(const TropElement& X, const TropElement& Y, const TropElement& Z);

// ------------------------------------------------------- scaling consistency

/// One scaling row: per output coordinate, the gap between ε·log of the
/// rational map at e^{X/ε} and the tropical output, against the certified
/// budget ε·log(max(S, R)) from the monomial-count pair of that coordinate.
struct UdRow {
    Rat epsilon;
    std::vector<double> deviation;  ///< x' block then y' block
    std::vector<double> budget;
    double max_deviation = 0.0;
    double max_budget = 0.0;
    bool within = true;  ///< every deviation <= its budget (+ float slop)
};

struct UdReport {
    std::vector<UdRow> rows;  ///< one per requested epsilon, input order
    bool all_within = true;
};

/// Evaluates the rational map at the exponentiated points in high-precision
/// floating arithmetic and compares against trop_r(X, Y) for each ε.
UdReport ud_consistency(const TropElement& X, const TropElement& Y,
                        const std::vector<Rat>& epsilons);

/// The scaled logarithm ε·log P_i(e^{X/ε}, e^{Y/ε}) of the cyclic polynomial
/// as an exact-input/float-output probe (the quantity whose gap from
/// trop_p saturates the ε·log(#terms) bound when all monomials tie).
double ud_p_probe(int i, const TropElement& X, const TropElement& Y, const Rat& epsilon);

}  // namespace trlab

#pragma once
/**
 * @file vertex.hpp
 * @brief Deterministic square-lattice system whose local update is the
 *        rational R map, plus its tau-function formulation on the duplicated
 *        face lattice and the composition route to the Yang-Baxter property.
 *
 * Geometry.  Vertices sit at (s, t) with s increasing eastward and t
 * southward.  Every edge carries a crystal element; around each vertex the
 * four edges satisfy R(x, y) = (x', y') where x enters on the west edge and
 * y on the north edge, and the outputs leave on the east (y') and south (x')
 * edges.  Row elements all share one level, column elements another, so the
 * whole state is determined by its northwest boundary, and the southeast
 * boundary determines it equally well because R is an involution.
 *
 * Faces.  Each lattice line is duplicated into a parallel pair, producing a
 * face lattice indexed by half-integers.  Faces at integer (s, t) carry the
 * full tau column 0..n, the four diagonal neighbours carry corner columns
 * 0..n, and the axis neighbours (half-integer sum) carry the short edge
 * column 1..n-2.  tau_field fills every face from the free-fermion
 * expectation values at the lattice time arrays; around every integer face
 * the bilinear system holds with the spectral pair (L(t), K(s)).
 */

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "trlab/bilinear.hpp"
#include "trlab/crystal.hpp"
#include "trlab/fermion.hpp"
#include "trlab/json_io.hpp"
#include "trlab/tropical_r.hpp"

namespace trlab {

// ---------------------------------------------------------------------------
// Edge lattice
// ---------------------------------------------------------------------------

/// Northwest boundary data: one element entering each column from the north
/// and one entering each row from the west.
struct LatticeBoundary {
    std::vector<CrystalElement> north;  ///< column s gets north[s]
    std::vector<CrystalElement> west;   ///< row t gets west[t]
};

/// Fully evolved window.  h(s, t) is the row element entering vertex (s, t)
/// from the west (so h(S, t) is the east outflow of row t); v(s, t) is the
/// column element entering from the north (v(s, T) the south outflow).
struct LatticeState {
    Family family = Family::D1;
    int n = 0;
    int S = 0;  ///< number of columns
    int T = 0;  ///< number of rows
    std::vector<CrystalElement> Hs;  ///< (S+1) x T, h(s,t) at [t*(S+1)+s]
    std::vector<CrystalElement> Vs;  ///< S x (T+1), v(s,t) at [t*S+s]

    const CrystalElement& h(int s, int t) const;
    const CrystalElement& v(int s, int t) const;
    CrystalElement& h(int s, int t);
    CrystalElement& v(int s, int t);
};

/// Sweeps the window in anti-diagonal wavefronts: every vertex on a front has
/// both inputs fixed before the front is processed, so the result does not
/// depend on the schedule.  All boundary elements must share one family and
/// rank (ConfigError).  A vanishing map denominator surfaces as SingularInput
/// tagged with the vertex coordinates.
LatticeState evolve(const LatticeBoundary& boundary, int S, int T);

/// The quantity conserved along lattice lines: the level for full-family
/// elements, the embedded level for the reduced families, and the coordinate
/// product for the cyclic family.
Rat conserved_level(const CrystalElement& e);

/// Levels along every lattice line.  Row t carries level row_l[t]^{-1} and
/// column s level col_k[s]^{-1}; `constant` reports whether each line is
/// internally constant (it always is for an evolved state — a violation
/// indicates an upstream bug, so it is reported rather than thrown).
struct LineLevelReport {
    std::vector<Rat> row_l;
    std::vector<Rat> col_k;
    bool constant = true;
};

LineLevelReport line_levels(const LatticeState& state);

/// Re-checks R(x, y) = (x', y') exactly around every vertex of the window.
bool verify_vertices(const LatticeState& state);

Json lattice_boundary_to_json(const LatticeBoundary& b);
LatticeBoundary lattice_boundary_from_json(const Json& j);
Json lattice_state_to_json(const LatticeState& state);

// ---------------------------------------------------------------------------
// Face tau field
// ---------------------------------------------------------------------------

/// Input data for the face lattice: rank and interior constants, the odd
/// anchor time, one spectral value per lattice line over a finite window
/// (contiguous integer keys), the expectation-value parameter set (which must
/// satisfy the momentum pairing — it is shared by every line), and an
/// optional odd second time axis.
struct FaceTauFieldSpec {
    int n = 0;
    std::vector<Rat> a;  ///< interior constants a_2..a_{n-1}
    TimeArray eta;       ///< odd anchor time
    std::map<int, Rat> Kline;  ///< column spectral values K(s)
    std::map<int, Rat> Lline;  ///< row spectral values L(t)
    FermionParams g;
    TimeArray y;  ///< second time axis (odd; default 0)
};

/// Filled face lattice.  Faces are keyed by doubled coordinates
/// (2s, 2t) ∈ ℤ²; the component vector holds indices 0..n for integer and
/// corner faces and 1..n-2 (offset by one) for edge faces.
struct FaceTauField {
    int n = 0;
    std::vector<Rat> a;
    std::map<int, Rat> Kline, Lline;
    std::map<std::pair<int, int>, std::vector<GaussRat>> faces;

    bool has(int s2, int t2) const;
    const std::vector<GaussRat>& at(int s2, int t2) const;  // IndexOutOfRange
    /// Component j of the face at doubled coordinates (s2, t2).
    const GaussRat& component(int s2, int t2, int j) const;
};

/// Fills every face of the duplicated window (all half-integer coordinates
/// covered by the supplied line maps, including the outer half-step ring) by
/// the case analysis on the face type.  The parameter set is transported once
/// through h_parameters (the momentum pairing must hold); spectral values are
/// validated per line and per (K(s), L(t)) pair as for a single vertex.
/// Line values must additionally avoid the momenta ±p_mu of the parameter
/// set, since a time shift by eps(1/A) evaluates weights with a factor
/// (1 - p/A); a collision surfaces as PoleAtMomentum.
FaceTauField tau_field(const FaceTauFieldSpec& spec);

/// The bilinear data around one integer face: taus from the nine surrounding
/// faces and crystal parameters built from (L(t), K(s)).
TauCore<GaussRat> face_core(const FaceTauField& field, int s, int t);

/// Residuals of all 4(n+1) equations around the integer face (s, t).
std::vector<GaussRat> face_residuals(const FaceTauField& field, int s, int t);

/// Residuals around every integer face of the window, concatenated in
/// (t, s) raster order.
std::vector<GaussRat> all_face_residuals(const FaceTauField& field);

/// Edge elements read off the face field around one integer face
/// (west, north, south, east) = (x, y, x', y').  The face values must be
/// real (ConfigError otherwise).
Quadruple face_quadruple(const FaceTauField& field, int s, int t);

/// The level of the row-t line determined by the spectral value:
/// l_t = L(t)^2 prod_i (L(t)^2 - a_i^2); row elements have level l_t^{-1}.
Rat row_line_level(const FaceTauFieldSpec& spec, int t);
/// Same for column s with K(s).
Rat col_line_level(const FaceTauFieldSpec& spec, int s);

// ---------------------------------------------------------------------------
// Yang-Baxter composition
// ---------------------------------------------------------------------------

/// Result of building the two three-line composition diagrams.  The element
/// part applies the local map along each diagram's crossing sequence; the
/// time part runs the face-time bookkeeping of the duplicated lattice around
/// both diagrams: each of the six lines (three strands, doubled) shifts the
/// time by eps(1/A) across its left member and eps~(1/A) across its right
/// member, so every boundary face time is the anchor plus the contributions
/// of the lines it lies to the left of.  The seven incoming faces get common
/// times by construction; the composition property is that the five outgoing
/// faces also agree between the diagrams.
struct YbeCompositionReport {
    std::array<CrystalElement, 3> left;   ///< crossing order (12)(23)(12)
    std::array<CrystalElement, 3> right;  ///< crossing order (23)(12)(23)
    bool elements_equal = false;
    bool matches_check_ybe = false;
    std::vector<TimeArray> incoming;        ///< 7 shared input face times
    std::vector<TimeArray> outgoing_left;   ///< 5 output face times, walk order
    std::vector<TimeArray> outgoing_right;  ///< same faces in the other diagram
    bool times_equal = false;

    bool ok() const { return elements_equal && matches_check_ybe && times_equal; }
};

/// Builds both diagrams for (x, y, z).  A1, A2, A3 are the bookkeeping
/// spectral values of the three strands used by the face-time recursion
/// (nonzero; the sharing statement is independent of their values).
YbeCompositionReport ybe_composition(const CrystalElement& x,
                                     const CrystalElement& y,
                                     const CrystalElement& z,
                                     const Rat& A1 = Rat(2),
                                     const Rat& A2 = Rat(7),
                                     const Rat& A3 = Rat(11));

}  // namespace trlab

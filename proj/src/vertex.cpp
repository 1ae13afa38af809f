#include "trlab/vertex.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "trlab/errors.hpp"

namespace trlab {

// ---------------------------------------------------------------------------
// Edge lattice
// ---------------------------------------------------------------------------

namespace {

std::size_t h_index(const LatticeState& st, int s, int t) {
    if (s < 0 || s > st.S || t < 0 || t >= st.T)
        throw IndexOutOfRange("row edge (s,t) outside the window");
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(st.S + 1) +
           static_cast<std::size_t>(s);
}

std::size_t v_index(const LatticeState& st, int s, int t) {
    if (s < 0 || s >= st.S || t < 0 || t > st.T)
        throw IndexOutOfRange("column edge (s,t) outside the window");
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(st.S) +
           static_cast<std::size_t>(s);
}

}  // namespace

const CrystalElement& LatticeState::h(int s, int t) const { return Hs[h_index(*this, s, t)]; }
const CrystalElement& LatticeState::v(int s, int t) const { return Vs[v_index(*this, s, t)]; }
CrystalElement& LatticeState::h(int s, int t) { return Hs[h_index(*this, s, t)]; }
CrystalElement& LatticeState::v(int s, int t) { return Vs[v_index(*this, s, t)]; }

LatticeState evolve(const LatticeBoundary& boundary, int S, int T) {
    if (S <= 0 || T <= 0) throw ConfigError("window sizes must be positive");
    if (static_cast<int>(boundary.north.size()) != S)
        throw ConfigError("north boundary needs one element per column");
    if (static_cast<int>(boundary.west.size()) != T)
        throw ConfigError("west boundary needs one element per row");

    const CrystalElement& anchor = boundary.west.front();
    const Family fam = anchor.family();
    const int n = anchor.rank();
    for (const CrystalElement& e : boundary.north)
        if (e.family() != fam || e.rank() != n)
            throw ConfigError("boundary elements must share one family and rank");
    for (const CrystalElement& e : boundary.west)
        if (e.family() != fam || e.rank() != n)
            throw ConfigError("boundary elements must share one family and rank");

    LatticeState st;
    st.family = fam;
    st.n = n;
    st.S = S;
    st.T = T;
    st.Hs.assign(static_cast<std::size_t>(S + 1) * static_cast<std::size_t>(T), anchor);
    st.Vs.assign(static_cast<std::size_t>(S) * static_cast<std::size_t>(T + 1), anchor);
    for (int t = 0; t < T; ++t) st.h(0, t) = boundary.west[static_cast<std::size_t>(t)];
    for (int s = 0; s < S; ++s) st.v(s, 0) = boundary.north[static_cast<std::size_t>(s)];

    // Anti-diagonal wavefronts: every vertex on front d = s + t has both of
    // its inputs finalized by fronts < d, so the sweep order within a front
    // is immaterial and the result is schedule-independent.
    for (int d = 0; d <= S + T - 2; ++d) {
        const int s_lo = std::max(0, d - (T - 1));
        const int s_hi = std::min(S - 1, d);
        for (int s = s_lo; s <= s_hi; ++s) {
            const int t = d - s;
            try {
                const RResult r = r_apply(st.h(s, t), st.v(s, t));
                st.v(s, t + 1) = r.x_out;
                st.h(s + 1, t) = r.y_out;
            } catch (const SingularInput& e) {
                std::ostringstream os;
                os << "vertex (" << s << "," << t << "): " << e.what();
                throw SingularInput(os.str());
            }
        }
    }
    return st;
}

Rat conserved_level(const CrystalElement& e) {
    switch (e.family()) {
        case Family::D1: return level(e);
        case Family::A2:
        case Family::C1: return level(embed(e));
        default: {
            Rat prod(1);
            for (const Rat& c : e.coords()) prod *= c;
            return prod;
        }
    }
}

LineLevelReport line_levels(const LatticeState& st) {
    LineLevelReport rep;
    rep.row_l.reserve(static_cast<std::size_t>(st.T));
    rep.col_k.reserve(static_cast<std::size_t>(st.S));
    auto inv_level = [](const CrystalElement& e) {
        const Rat lv = conserved_level(e);
        if (lv.is_zero()) throw ZeroScale("lattice element has zero level");
        return Rat(1) / lv;
    };
    for (int t = 0; t < st.T; ++t) {
        rep.row_l.push_back(inv_level(st.h(0, t)));
        for (int s = 1; s <= st.S; ++s)
            if (inv_level(st.h(s, t)) != rep.row_l.back()) rep.constant = false;
    }
    for (int s = 0; s < st.S; ++s) {
        rep.col_k.push_back(inv_level(st.v(s, 0)));
        for (int t = 1; t <= st.T; ++t)
            if (inv_level(st.v(s, t)) != rep.col_k.back()) rep.constant = false;
    }
    return rep;
}

bool verify_vertices(const LatticeState& st) {
    for (int t = 0; t < st.T; ++t)
        for (int s = 0; s < st.S; ++s) {
            const RResult r = r_apply(st.h(s, t), st.v(s, t));
            if (!(st.v(s, t + 1) == r.x_out) || !(st.h(s + 1, t) == r.y_out)) return false;
        }
    return true;
}

Json lattice_boundary_to_json(const LatticeBoundary& b) {
    Json north = Json::array();
    for (const CrystalElement& e : b.north) north.push_back(element_to_json(e));
    Json west = Json::array();
    for (const CrystalElement& e : b.west) west.push_back(element_to_json(e));
    return Json{{"north", north}, {"west", west}};
}

LatticeBoundary lattice_boundary_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("north") || !j.contains("west"))
        throw ConfigError("boundary JSON needs 'north' and 'west' arrays");
    LatticeBoundary b;
    for (const Json& e : j.at("north")) b.north.push_back(element_from_json(e));
    for (const Json& e : j.at("west")) b.west.push_back(element_from_json(e));
    if (b.north.empty() || b.west.empty())
        throw ConfigError("boundary JSON needs nonempty 'north' and 'west' arrays");
    return b;
}

Json lattice_state_to_json(const LatticeState& st) {
    Json h = Json::array();
    for (int t = 0; t < st.T; ++t) {
        Json row = Json::array();
        for (int s = 0; s <= st.S; ++s) row.push_back(element_to_json(st.h(s, t)));
        h.push_back(row);
    }
    Json v = Json::array();
    for (int t = 0; t <= st.T; ++t) {
        Json row = Json::array();
        for (int s = 0; s < st.S; ++s) row.push_back(element_to_json(st.v(s, t)));
        v.push_back(row);
    }
    return Json{{"family", family_name(st.family)},
                {"n", st.n},
                {"S", st.S},
                {"T", st.T},
                {"h", h},
                {"v", v}};
}

// ---------------------------------------------------------------------------
// Face tau field
// ---------------------------------------------------------------------------

namespace {

/// Keys must form one contiguous integer run; returns {min, max}.
std::pair<int, int> key_range(const std::map<int, Rat>& line, const char* what) {
    if (line.empty()) throw ConfigError(std::string(what) + " line map is empty");
    const int lo = line.begin()->first;
    const int hi = line.rbegin()->first;
    if (hi - lo + 1 != static_cast<int>(line.size()))
        throw ConfigError(std::string(what) + " line keys must be contiguous");
    return {lo, hi};
}

GridSpec representative_spec(const FaceTauFieldSpec& spec, const Rat& K, const Rat& L) {
    GridSpec g;
    g.n = spec.n;
    g.Kval = K;
    g.Lval = L;
    g.a = spec.a;
    g.eta = spec.eta;
    return g;
}

}  // namespace

bool FaceTauField::has(int s2, int t2) const { return faces.count({s2, t2}) > 0; }

const std::vector<GaussRat>& FaceTauField::at(int s2, int t2) const {
    auto it = faces.find({s2, t2});
    if (it == faces.end()) throw IndexOutOfRange("face outside the filled window");
    return it->second;
}

const GaussRat& FaceTauField::component(int s2, int t2, int j) const {
    const std::vector<GaussRat>& vec = at(s2, t2);
    const bool edge_face = ((s2 + t2) % 2 + 2) % 2 == 1;
    if (edge_face) {
        if (j < 1 || j > n - 2) throw IndexOutOfRange("edge face components run 1..n-2");
        return vec[static_cast<std::size_t>(j - 1)];
    }
    if (j < 0 || j > n) throw IndexOutOfRange("face components run 0..n");
    return vec[static_cast<std::size_t>(j)];
}

FaceTauField tau_field(const FaceTauFieldSpec& spec) {
    const auto [s_lo, s_hi] = key_range(spec.Kline, "column");
    const auto [t_lo, t_hi] = key_range(spec.Lline, "row");
    if (!time_is_odd(spec.y)) throw OddnessViolation("second time axis must be odd");

    // Per-pair genericity: every (K(s), L(t)) combination must be a valid
    // spectral pair (nonzero, off the interior constants, K != +-L).
    for (const auto& [s, K] : spec.Kline)
        for (const auto& [t, L] : spec.Lline) validate_grid(representative_spec(spec, K, L));

    const GridSpec rep = representative_spec(spec, spec.Kline.begin()->second,
                                             spec.Lline.begin()->second);
    const LatticeTimeGrid grid = build_time_grid(rep, spec.Kline, spec.Lline, spec.eta);
    validate_params(spec.g);
    // The momentum pairing constrains only the interior constants, so one
    // transported parameter set serves every line of the window.
    const FermionParams h = h_parameters(spec.g, rep);

    const int n = spec.n;
    const TimeArray& y = spec.y;
    const FermionParams& g = spec.g;
    auto F11 = [&](const TimeArray& t) { return eval_F(1, 1, 0, t, y, g); };

    FaceTauField field;
    field.n = n;
    field.a = spec.a;
    field.Kline = spec.Kline;
    field.Lline = spec.Lline;

    for (int t2 = 2 * t_lo - 1; t2 <= 2 * t_hi + 1; ++t2) {
        for (int s2 = 2 * s_lo - 1; s2 <= 2 * s_hi + 1; ++s2) {
            const bool s_even = ((s2 % 2) + 2) % 2 == 0;
            const bool t_even = ((t2 % 2) + 2) % 2 == 0;
            std::vector<GaussRat> vec;
            if (s_even && t_even) {
                // Full column at a lattice vertex: charge-split pair at the
                // ends, bulk shifted one slot, index-shifted values at the
                // top with the spectral coefficient of the two lines through
                // the face.
                const Rat& K = spec.Kline.at(s2 / 2);
                const Rat& L = spec.Lline.at(t2 / 2);
                vec.assign(static_cast<std::size_t>(n + 1), GaussRat(1));
                const TimeArray x0 = grid.face_time(s2, t2);
                const GaussRat f01 = eval_F(0, 1, 0, x0, y, g);
                const GaussRat f011 = eval_F(0, 1, 1, x0, y, g);
                vec[0] = f01 + GaussRat::i() * f011;
                vec[1] = f01 - GaussRat::i() * f011;
                for (int j = 2; j <= n - 2; ++j)
                    vec[static_cast<std::size_t>(j)] = F11(grid.component(s2, t2, j - 1));
                const TimeArray xt = grid.component(s2, t2, n - 2);
                const GaussRat base = eval_F_shifted(0, 0, 0, xt, y, g);
                const GaussRat corr = eval_F_shifted(-1, 1, 1, xt, y, g);
                const GaussRat coef = GaussRat::i() * GaussRat(rep.a_of(n - 1) / (K * L));
                vec[static_cast<std::size_t>(n - 1)] = base - coef * corr;
                vec[static_cast<std::size_t>(n)] = base + coef * corr;
            } else if (!s_even && !t_even) {
                // Corner column: one-component values with the original set
                // at the bottom and the transported set at the top.
                vec.assign(static_cast<std::size_t>(n + 1), GaussRat(1));
                const TimeArray x = grid.face_time(s2, t2);
                vec[0] = eval_f(0, x, y, g);
                vec[1] = eval_f(1, x, y, g);
                for (int j = 2; j <= n - 2; ++j)
                    vec[static_cast<std::size_t>(j)] = F11(grid.component(s2, t2, j));
                vec[static_cast<std::size_t>(n - 1)] = eval_f(1, x, y, h);
                vec[static_cast<std::size_t>(n)] = eval_f(0, x, y, h);
            } else {
                // Edge face: short bulk column only.
                vec.reserve(static_cast<std::size_t>(n - 2));
                for (int j = 1; j <= n - 2; ++j) vec.push_back(F11(grid.component(s2, t2, j)));
            }
            field.faces.emplace(std::make_pair(s2, t2), std::move(vec));
        }
    }
    return field;
}

TauCore<GaussRat> face_core(const FaceTauField& field, int s, int t) {
    auto ks = field.Kline.find(s);
    auto lt = field.Lline.find(t);
    if (ks == field.Kline.end() || lt == field.Lline.end())
        throw IndexOutOfRange("integer face outside the filled window");
    const Rat& K = ks->second;
    const Rat& L = lt->second;
    const int n = field.n;

    TauCore<GaussRat> core;
    core.n = n;
    core.la.resize(static_cast<std::size_t>(n));
    core.lab.resize(static_cast<std::size_t>(n - 1));
    core.ka.resize(static_cast<std::size_t>(n));
    core.kab.resize(static_cast<std::size_t>(n - 1));
    for (int i = 1; i <= n - 1; ++i) {
        const Rat ai = (i == 1) ? Rat(0) : field.a[static_cast<std::size_t>(i - 2)];
        core.la[static_cast<std::size_t>(i - 1)] = GaussRat(L - ai);
        core.lab[static_cast<std::size_t>(i - 1)] = GaussRat(L + ai);
        core.ka[static_cast<std::size_t>(i - 1)] = GaussRat(K - ai);
        core.kab[static_cast<std::size_t>(i - 1)] = GaussRat(K + ai);
    }
    core.la[static_cast<std::size_t>(n - 1)] = GaussRat(1);
    core.ka[static_cast<std::size_t>(n - 1)] = GaussRat(1);
    core.alpha = GaussRat(K - L);
    core.beta = GaussRat(K + L);

    const int s2 = 2 * s;
    const int t2 = 2 * t;
    core.tau[0] = field.at(s2, t2);
    core.tau[1] = field.at(s2 + 1, t2 - 1);
    core.tau[2] = field.at(s2 - 1, t2 - 1);
    core.tau[3] = field.at(s2 - 1, t2 + 1);
    core.tau[4] = field.at(s2 + 1, t2 + 1);
    core.Nv = field.at(s2, t2 - 1);
    core.Wv = field.at(s2 - 1, t2);
    core.Sv = field.at(s2, t2 + 1);
    core.Ev = field.at(s2 + 1, t2);
    return core;
}

std::vector<GaussRat> face_residuals(const FaceTauField& field, int s, int t) {
    const TauCore<GaussRat> core = face_core(field, s, t);
    std::vector<GaussRat> out;
    out.reserve(static_cast<std::size_t>(4 * (field.n + 1)));
    for (int J = 1; J <= 4; ++J)
        for (int i = 0; i <= field.n; ++i) out.push_back(eval_equation_core(J, i, core));
    return out;
}

std::vector<GaussRat> all_face_residuals(const FaceTauField& field) {
    std::vector<GaussRat> out;
    for (const auto& [t, L] : field.Lline)
        for (const auto& [s, K] : field.Kline) {
            (void)L;
            (void)K;
            const std::vector<GaussRat> r = face_residuals(field, s, t);
            out.insert(out.end(), r.begin(), r.end());
        }
    return out;
}

Quadruple face_quadruple(const FaceTauField& field, int s, int t) {
    return extract_quadruple(tau_core_to_data(face_core(field, s, t)));
}

namespace {

Rat spectral_level(const FaceTauFieldSpec& spec, const Rat& value) {
    Rat out = value * value;
    for (const Rat& a : spec.a) out *= value * value - a * a;
    return out;
}

}  // namespace

Rat row_line_level(const FaceTauFieldSpec& spec, int t) {
    auto it = spec.Lline.find(t);
    if (it == spec.Lline.end()) throw IndexOutOfRange("row outside the window");
    return spectral_level(spec, it->second);
}

Rat col_line_level(const FaceTauFieldSpec& spec, int s) {
    auto it = spec.Kline.find(s);
    if (it == spec.Kline.end()) throw IndexOutOfRange("column outside the window");
    return spectral_level(spec, it->second);
}

// ---------------------------------------------------------------------------
// Yang-Baxter composition
// ---------------------------------------------------------------------------

namespace {

/// A strand is a parallel pair of lines; the face time collects eps(1/A)
/// from the first member and eps~(1/A) from the second, for every strand
/// pair having the face on the same side as the contribution's member line.
struct SideSet {
    std::array<std::array<bool, 2>, 3> on{};  // [strand][member 0=eps, 1=eps~]

    TimeArray time(const std::array<Rat, 3>& A) const {
        TimeArray t;
        for (int strand = 0; strand < 3; ++strand) {
            const Rat inv = Rat(1) / A[static_cast<std::size_t>(strand)];
            if (on[static_cast<std::size_t>(strand)][0]) t = t + eps(inv);
            if (on[static_cast<std::size_t>(strand)][1]) t = t + eps_tilde(inv);
        }
        return t;
    }
};

struct BoundaryTimes {
    std::vector<TimeArray> incoming;  // 7 faces, walk order
    std::vector<TimeArray> outgoing;  // 5 faces, walk order
};

/// Walks the boundary faces of a three-strand diagram.  Crossing a line
/// toggles which side of it the current face lies on; the walk descends the
/// incoming side in initial strand order (second member first) and ascends
/// the outgoing side in final strand order (first member first), which
/// closes the cycle.
BoundaryTimes boundary_walk(const std::array<int, 3>& word, const std::array<Rat, 3>& A) {
    std::array<int, 3> pos = {0, 1, 2};  // strand ids by slot
    for (int slot : word) std::swap(pos[static_cast<std::size_t>(slot - 1)],
                                    pos[static_cast<std::size_t>(slot)]);

    BoundaryTimes out;
    SideSet side;
    out.incoming.push_back(side.time(A));  // base face: no line on its left
    for (int strand = 0; strand < 3; ++strand)
        for (int member : {1, 0}) {
            side.on[static_cast<std::size_t>(strand)][static_cast<std::size_t>(member)] ^= true;
            out.incoming.push_back(side.time(A));
        }
    for (int k = 2; k >= 0; --k) {
        const int strand = pos[static_cast<std::size_t>(k)];
        for (int member : {0, 1}) {
            side.on[static_cast<std::size_t>(strand)][static_cast<std::size_t>(member)] ^= true;
            if (!(k == 0 && member == 1))  // final toggle returns to the base face
                out.outgoing.push_back(side.time(A));
        }
    }
    for (auto& row : side.on)
        for (bool b : row)
            if (b) throw ConfigError("boundary walk failed to close");
    return out;
}

std::array<CrystalElement, 3> apply_word(std::array<CrystalElement, 3> triple,
                                         const std::array<int, 3>& word) {
    for (int slot : word) {
        const RResult r = r_apply(triple[static_cast<std::size_t>(slot - 1)],
                                  triple[static_cast<std::size_t>(slot)]);
        triple[static_cast<std::size_t>(slot - 1)] = r.x_out;
        triple[static_cast<std::size_t>(slot)] = r.y_out;
    }
    return triple;
}

}  // namespace

YbeCompositionReport ybe_composition(const CrystalElement& x, const CrystalElement& y,
                                     const CrystalElement& z, const Rat& A1, const Rat& A2,
                                     const Rat& A3) {
    if (A1.is_zero() || A2.is_zero() || A3.is_zero())
        throw ZeroScale("strand spectral values must be nonzero");

    const std::array<int, 3> left_word = {1, 2, 1};
    const std::array<int, 3> right_word = {2, 1, 2};

    YbeCompositionReport rep{apply_word({x, y, z}, left_word),
                             apply_word({x, y, z}, right_word),
                             false,
                             false,
                             {},
                             {},
                             {},
                             false};
    rep.elements_equal = rep.left[0] == rep.right[0] && rep.left[1] == rep.right[1] &&
                         rep.left[2] == rep.right[2];

    const YbeReport direct = check_ybe(x, y, z);
    rep.matches_check_ybe = direct.equal == rep.elements_equal &&
                            direct.left[0] == rep.left[0] && direct.left[1] == rep.left[1] &&
                            direct.left[2] == rep.left[2] && direct.right[0] == rep.right[0] &&
                            direct.right[1] == rep.right[1] && direct.right[2] == rep.right[2];

    const std::array<Rat, 3> A = {A1, A2, A3};
    const BoundaryTimes lt = boundary_walk(left_word, A);
    const BoundaryTimes rt = boundary_walk(right_word, A);
    if (lt.incoming != rt.incoming)
        throw ConfigError("incoming face times must not depend on the diagram");
    rep.incoming = lt.incoming;
    rep.outgoing_left = lt.outgoing;
    rep.outgoing_right = rt.outgoing;
    rep.times_equal = lt.outgoing == rt.outgoing;
    return rep;
}

}  // namespace trlab

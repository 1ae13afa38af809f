#include "trlab/tropicalizer.hpp"

#include <cmath>
#include <utility>

#include "trlab/bigfloat.hpp"
#include "trlab/errors.hpp"
#include "trlab/tropical_r.hpp"

namespace trlab {

namespace {

constexpr mpfr_prec_t kUdPrec = 320;

/// BigFloat wrapper with the value semantics the semiring templates expect:
/// S(1) is the number one (BigFloat's own int constructor selects precision).
struct UdFloat {
    BigFloat v;
    UdFloat() : v(BigFloat::from_long(0, kUdPrec)) {}
    UdFloat(int n) : v(BigFloat::from_long(n, kUdPrec)) {}  // NOLINT: semiring leaf
    explicit UdFloat(BigFloat b) : v(std::move(b)) {}

    friend UdFloat operator+(const UdFloat& a, const UdFloat& b) { return UdFloat(a.v + b.v); }
    friend UdFloat operator*(const UdFloat& a, const UdFloat& b) { return UdFloat(a.v * b.v); }
    friend UdFloat operator/(const UdFloat& a, const UdFloat& b) { return UdFloat(a.v / b.v); }
};

std::size_t coord_count(Family f, int n) {
    switch (f) {
        case Family::A1:
            if (n < 2) throw ConfigError("cyclic rank must be at least 2");
            return static_cast<std::size_t>(n);
        case Family::D1:
            if (n < 3) throw ConfigError("full-family rank must be at least 3");
            return static_cast<std::size_t>(2 * n - 1);
        default:
            throw WrongFamily("tropical maps cover the cyclic and full families");
    }
}

void check_compatible(const TropElement& X, const TropElement& Y) {
    if (X.family != Y.family || X.n != Y.n)
        throw ConfigError("tropical map needs matching family and rank");
    coord_count(X.family, X.n);
    for (const TropVal& c : X.coords)
        if (c.is_neg_inf()) throw NonFiniteInput("map input has a -inf coordinate");
    for (const TropVal& c : Y.coords)
        if (c.is_neg_inf()) throw NonFiniteInput("map input has a -inf coordinate");
}

/// One template for all three scalar instantiations (TropVal, CountPair,
/// UdFloat): the cyclic core directly, the full-family core through the
/// positive table.
template <class S>
std::pair<std::vector<S>, std::vector<S>> map_core(Family f, int n, const std::vector<S>& x,
                                                   const std::vector<S>& y) {
    if (f == Family::A1) return r_typeA_core(x, y);
    DPair<S> p;
    p.n = n;
    p.x = x;
    p.y = y;
    return r_typeD_core(p, vu_core_pos(p));
}

bool trop_greater(const TropVal& a, const TropVal& b) {
    return a.value() > b.value();  // both finite by construction
}

}  // namespace

TropElement make_trop_element(Family f, int n, std::vector<TropVal> coords) {
    if (coords.size() != coord_count(f, n))
        throw ConfigError("coordinate count does not match the family layout");
    for (const TropVal& c : coords)
        if (c.is_neg_inf()) throw NonFiniteInput("element coordinate is -inf");
    return TropElement{f, n, std::move(coords)};
}

TropElement make_trop_element(Family f, int n, const std::vector<long>& coords) {
    std::vector<TropVal> vals;
    vals.reserve(coords.size());
    for (long c : coords) vals.emplace_back(Rat(c));
    return make_trop_element(f, n, std::move(vals));
}

Json trop_element_to_json(const TropElement& e) {
    Json coords = Json::array();
    for (const TropVal& c : e.coords) coords.push_back(c.to_string());
    return Json{{"family", family_name(e.family)}, {"n", e.n}, {"coords", coords}};
}

TropElement trop_element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("n") || !j.contains("coords"))
        throw ConfigError("tropical element JSON needs family, n, coords");
    const Family f = family_parse(j.at("family").get<std::string>());
    const int n = j.at("n").get<int>();
    std::vector<TropVal> coords;
    for (const Json& c : j.at("coords"))
        coords.emplace_back(Rat::parse(c.get<std::string>()));
    return make_trop_element(f, n, std::move(coords));
}

TropVal trop_level(const TropElement& e) {
    TropVal acc = TropVal::zero();
    for (const TropVal& c : e.coords) acc = otimes(acc, c);
    return acc;
}

TropVal trop_p(int i, const TropElement& X, const TropElement& Y) {
    check_compatible(X, Y);
    if (X.family != Family::A1) throw WrongFamily("the P polynomials belong to the cyclic map");
    return p_poly_core(i, X.coords, Y.coords);
}

TropRResult trop_r(const TropElement& X, const TropElement& Y) {
    check_compatible(X, Y);
    if (X.family == Family::D1 && !trop_greater(trop_level(X), trop_level(Y)))
        throw LevelMismatch("full-family tropical map needs level(X) > level(Y)");
    auto [xp, yp] = map_core(X.family, X.n, X.coords, Y.coords);
    return TropRResult{TropElement{X.family, X.n, std::move(xp)},
                       TropElement{X.family, X.n, std::move(yp)}};
}

TropYbeReport trop_ybe(const TropElement& X, const TropElement& Y, const TropElement& Z) {
    check_compatible(X, Y);
    check_compatible(Y, Z);
    auto apply_word = [](std::array<TropElement, 3> triple, const std::array<int, 3>& word) {
        for (int slot : word) {
            TropRResult r = trop_r(triple[static_cast<std::size_t>(slot - 1)],
                                   triple[static_cast<std::size_t>(slot)]);
            triple[static_cast<std::size_t>(slot - 1)] = std::move(r.x_out);
            triple[static_cast<std::size_t>(slot)] = std::move(r.y_out);
        }
        return triple;
    };
    TropYbeReport rep{apply_word({X, Y, Z}, {1, 2, 1}), apply_word({X, Y, Z}, {2, 1, 2}),
                      false};
    rep.equal = rep.left[0] == rep.right[0] && rep.left[1] == rep.right[1] &&
                rep.left[2] == rep.right[2];
    return rep;
}

namespace {

std::vector<UdFloat> exponentiate(const std::vector<TropVal>& coords, const Rat& eps) {
    std::vector<UdFloat> out;
    out.reserve(coords.size());
    for (const TropVal& c : coords)
        out.push_back(UdFloat(exp(BigFloat::from_rat(c.value() / eps, kUdPrec))));
    return out;
}

}  // namespace

UdReport ud_consistency(const TropElement& X, const TropElement& Y,
                        const std::vector<Rat>& epsilons) {
    const TropRResult trop = trop_r(X, Y);

    // Monomial-count certificates ride the same expression tree once.
    const std::size_t m = X.coords.size();
    const std::vector<CountPair> ones(m, CountPair{});
    auto [cx, cy] = map_core(X.family, X.n, ones, ones);
    std::vector<CountPair> counts(cx.begin(), cx.end());
    counts.insert(counts.end(), cy.begin(), cy.end());

    UdReport rep;
    for (const Rat& eps : epsilons) {
        if (!(eps > Rat(0))) throw ConfigError("scaling parameters must be positive");
        UdRow row;
        row.epsilon = eps;
        auto [fx, fy] = map_core(X.family, X.n, exponentiate(X.coords, eps),
                                 exponentiate(Y.coords, eps));
        std::vector<UdFloat> flat(fx.begin(), fx.end());
        flat.insert(flat.end(), fy.begin(), fy.end());
        std::vector<TropVal> tflat(trop.x_out.coords);
        tflat.insert(tflat.end(), trop.y_out.coords.begin(), trop.y_out.coords.end());

        const BigFloat eb = BigFloat::from_rat(eps, kUdPrec);
        for (std::size_t k = 0; k < flat.size(); ++k) {
            const BigFloat scaled = eb * log(flat[k].v);
            const BigFloat gap = abs(scaled - BigFloat::from_rat(tflat[k].value(), kUdPrec));
            const double dev = gap.to_double();
            const CountPair& c = counts[k];
            const double budget =
                eps.to_double() * std::log(c.above > c.below ? c.above : c.below);
            row.deviation.push_back(dev);
            row.budget.push_back(budget);
            if (dev > row.max_deviation) row.max_deviation = dev;
            if (budget > row.max_budget) row.max_budget = budget;
            if (dev > budget + 1e-9) row.within = false;
        }
        rep.all_within = rep.all_within && row.within;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

double ud_p_probe(int i, const TropElement& X, const TropElement& Y, const Rat& epsilon) {
    if (!(epsilon > Rat(0))) throw ConfigError("scaling parameters must be positive");
    check_compatible(X, Y);
    if (X.family != Family::A1) throw WrongFamily("the P polynomials belong to the cyclic map");
    const UdFloat value = p_poly_core(i, exponentiate(X.coords, epsilon),
                                      exponentiate(Y.coords, epsilon));
    return (BigFloat::from_rat(epsilon, kUdPrec) * log(value.v)).to_double();
}

}  // namespace trlab

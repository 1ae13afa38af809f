#include "trlab/crystal.hpp"

namespace trlab {

std::string family_name(Family f) {
    switch (f) {
        case Family::A1: return "A1";
        case Family::D1: return "D1";
        case Family::A2: return "A2";
        case Family::C1: return "C1";
    }
    throw ConfigError("unknown family enum");
}

Family family_parse(const std::string& name) {
    if (name == "A1") return Family::A1;
    if (name == "D1") return Family::D1;
    if (name == "A2") return Family::A2;
    if (name == "C1") return Family::C1;
    throw ConfigError("unknown family '" + name + "'");
}

int min_rank(Family f) {
    switch (f) {
        case Family::A1: return 2;
        case Family::D1: return 3;
        case Family::A2: return 2;
        case Family::C1: return 1;
    }
    throw ConfigError("unknown family enum");
}

std::size_t coord_count(Family f, int n) {
    auto un = static_cast<std::size_t>(n);
    switch (f) {
        case Family::A1: return un;
        case Family::D1: return 2 * un - 1;
        case Family::A2: return 2 * un;
        case Family::C1: return 2 * un + 1;
    }
    throw ConfigError("unknown family enum");
}

CrystalElement::CrystalElement(Family family, int n, std::vector<Rat> coords)
    : family_(family), n_(n), coords_(std::move(coords)) {
    if (n_ < min_rank(family_))
        throw IndexOutOfRange("rank " + std::to_string(n_) + " below minimum for " +
                              family_name(family_));
    if (coords_.size() != coord_count(family_, n_))
        throw IndexOutOfRange("expected " + std::to_string(coord_count(family_, n_)) +
                              " coordinates, got " + std::to_string(coords_.size()));
    for (const Rat& c : coords_)
        if (c.is_zero()) throw ZeroInput("zero coordinate in crystal element");
}

std::size_t CrystalElement::pos_x(int i) const {
    if (i < 1 || i > n_) throw IndexOutOfRange("x index " + std::to_string(i));
    switch (family_) {
        case Family::A1:
        case Family::D1:
        case Family::A2: return static_cast<std::size_t>(i - 1);
        case Family::C1: return static_cast<std::size_t>(i);
    }
    throw ConfigError("unknown family enum");
}

std::size_t CrystalElement::pos_xbar(int i) const {
    switch (family_) {
        case Family::D1:
            if (i < 1 || i > n_ - 1)
                throw IndexOutOfRange("barred index " + std::to_string(i));
            return static_cast<std::size_t>(2 * n_ - 1 - i);
        case Family::A2:
            if (i < 1 || i > n_)
                throw IndexOutOfRange("barred index " + std::to_string(i));
            return static_cast<std::size_t>(2 * n_ - i);
        case Family::C1:
            if (i < 1 || i > n_)
                throw IndexOutOfRange("barred index " + std::to_string(i));
            return static_cast<std::size_t>(2 * n_ + 1 - i);
        case Family::A1:
            throw WrongFamily("A1 has no barred coordinates");
    }
    throw ConfigError("unknown family enum");
}

const Rat& CrystalElement::x0() const {
    if (family_ != Family::C1) throw WrongFamily("x0 exists only for C1");
    return coords_[0];
}

std::string CrystalElement::to_string() const {
    std::string out = family_name(family_) + " n=" + std::to_string(n_) + " (";
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k) out += ", ";
        out += coords_[k].to_string();
    }
    return out + ")";
}

Rat level(const CrystalElement& x) {
    if (x.family() != Family::D1) throw WrongFamily("level is defined on D1 elements");
    Rat prod(1);
    for (const Rat& c : x.coords()) prod *= c;
    return prod;
}

std::string sigma_name(SigmaKind a) {
    switch (a) {
        case SigmaKind::one: return "1";
        case SigmaKind::top: return "n";
        case SigmaKind::star: return "star";
    }
    throw ConfigError("unknown sigma enum");
}

SigmaKind sigma_parse(const std::string& name) {
    if (name == "1") return SigmaKind::one;
    if (name == "n") return SigmaKind::top;
    if (name == "star" || name == "*") return SigmaKind::star;
    throw ConfigError("unknown involution '" + name + "'");
}

CrystalElement sigma(SigmaKind a, const CrystalElement& x) {
    if (x.family() != Family::D1) throw WrongFamily("sigma acts on D1 elements");
    int n = x.rank();
    std::vector<Rat> c = x.coords();
    switch (a) {
        case SigmaKind::one:
            std::swap(c[x.pos_x(1)], c[x.pos_xbar(1)]);
            break;
        case SigmaKind::top: {
            Rat xn = x.x(n);
            c[x.pos_x(n - 1)] = x.x(n - 1) * xn;
            c[x.pos_xbar(n - 1)] = x.xbar(n - 1) * xn;
            c[x.pos_x(n)] = inv(xn);
            break;
        }
        case SigmaKind::star:
            throw WrongFamily("sigma_* acts on pairs; use sigma_pair");
    }
    return CrystalElement(Family::D1, n, std::move(c));
}

std::pair<CrystalElement, CrystalElement> sigma_pair(SigmaKind a,
                                                     const CrystalElement& x,
                                                     const CrystalElement& y) {
    if (x.family() != Family::D1 || y.family() != Family::D1)
        throw WrongFamily("sigma_pair acts on D1 pairs");
    if (x.rank() != y.rank()) throw IndexOutOfRange("rank mismatch in pair");
    if (a != SigmaKind::star) return {sigma(a, x), sigma(a, y)};

    int n = x.rank();
    std::vector<Rat> cx = x.coords();
    std::vector<Rat> cy = y.coords();
    for (int i = 1; i <= n - 1; ++i) {
        cx[x.pos_x(i)] = y.xbar(i);
        cx[x.pos_xbar(i)] = y.x(i);
        cy[y.pos_x(i)] = x.xbar(i);
        cy[y.pos_xbar(i)] = x.x(i);
    }
    cx[x.pos_x(n)] = y.x(n);
    cy[y.pos_x(n)] = x.x(n);
    return {CrystalElement(Family::D1, n, std::move(cx)),
            CrystalElement(Family::D1, n, std::move(cy))};
}

CrystalElement embed(const CrystalElement& x) {
    int n = x.rank();
    std::vector<Rat> c;
    switch (x.family()) {
        case Family::A2: {
            // (x_1..x_n, xb_n..xb_1) -> (x_1..x_n, 1, xb_n..xb_1), rank n+1
            c.reserve(coord_count(Family::D1, n + 1));
            for (int i = 1; i <= n; ++i) c.push_back(x.x(i));
            c.push_back(Rat(1));
            for (int i = n; i >= 1; --i) c.push_back(x.xbar(i));
            return CrystalElement(Family::D1, n + 1, std::move(c));
        }
        case Family::C1: {
            // (x_0, x_1..x_n, xb_n..xb_1) -> (x_0, x_1..x_n, 1, xb_n..xb_1, x_0),
            // rank n+2
            c.reserve(coord_count(Family::D1, n + 2));
            c.push_back(x.x0());
            for (int i = 1; i <= n; ++i) c.push_back(x.x(i));
            c.push_back(Rat(1));
            for (int i = n; i >= 1; --i) c.push_back(x.xbar(i));
            c.push_back(x.x0());
            return CrystalElement(Family::D1, n + 2, std::move(c));
        }
        default:
            throw WrongFamily("embed is defined for A2 and C1 elements");
    }
}

CrystalElement project(const CrystalElement& d1, Family target) {
    if (d1.family() != Family::D1) throw WrongFamily("project expects a D1 element");
    int m = d1.rank();
    std::vector<Rat> c;
    switch (target) {
        case Family::A2: {
            int n = m - 1;
            if (n < min_rank(Family::A2)) throw IndexOutOfRange("rank too small for A2");
            if (d1.x(m) != Rat(1))
                throw ReductionViolated("middle coordinate is not 1");
            c.reserve(coord_count(Family::A2, n));
            for (int i = 1; i <= n; ++i) c.push_back(d1.x(i));
            for (int i = n; i >= 1; --i) c.push_back(d1.xbar(i));
            return CrystalElement(Family::A2, n, std::move(c));
        }
        case Family::C1: {
            int n = m - 2;
            if (n < min_rank(Family::C1)) throw IndexOutOfRange("rank too small for C1");
            if (d1.x(m) != Rat(1))
                throw ReductionViolated("middle coordinate is not 1");
            if (d1.x(1) != d1.xbar(1))
                throw ReductionViolated("end copies of x_0 differ");
            c.reserve(coord_count(Family::C1, n));
            c.push_back(d1.x(1));
            for (int i = 2; i <= m - 1; ++i) c.push_back(d1.x(i));
            for (int i = m - 1; i >= 2; --i) c.push_back(d1.xbar(i));
            return CrystalElement(Family::C1, n, std::move(c));
        }
        default:
            throw WrongFamily("project targets A2 or C1");
    }
}

CrystalElement kashiwara_A(int i, const Rat& c, const CrystalElement& x) {
    if (x.family() != Family::A1)
        throw WrongFamily("the geometric Kashiwara operator acts on A1");
    if (c.is_zero()) throw ZeroScale("scale factor must be nonzero");
    int n = x.rank();
    int a = ((i - 1) % n + n) % n + 1;       // normalize to 1..n
    int b = a % n + 1;                       // cyclic successor
    std::vector<Rat> v = x.coords();
    v[x.pos_x(a)] = x.x(a) * c;
    v[x.pos_x(b)] = x.x(b) / c;
    return CrystalElement(Family::A1, n, std::move(v));
}

CrystalElement random_element(SplitMix64& rng, Family f, int n, long height) {
    std::vector<Rat> c;
    std::size_t len = coord_count(f, n);
    c.reserve(len);
    for (std::size_t k = 0; k < len; ++k) c.push_back(rng.rat_pos(height));
    return CrystalElement(f, n, std::move(c));
}

}  // namespace trlab

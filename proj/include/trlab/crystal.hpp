#pragma once
/**
 * @file crystal.hpp
 * @brief Coordinate vectors for the four families, involutions, embeddings.
 *
 * A CrystalElement is an ordered vector of nonzero rationals whose layout
 * depends on the family:
 *
 *   A1 (rank n >= 2):  (x_1, ..., x_n)
 *   D1 (rank n >= 3):  (x_1, ..., x_n, xb_{n-1}, ..., xb_1)      [2n-1 entries]
 *   A2 (rank n >= 2):  (x_1, ..., x_n, xb_n, ..., xb_1)          [2n entries]
 *   C1 (rank n >= 1):  (x_0, x_1, ..., x_n, xb_n, ..., xb_1)     [2n+1 entries]
 *
 * ("xb" is the barred partner of x.)  The storage order matches the display
 * order above; every index map i -> position is centralized here so that the
 * x̄ conventions cannot drift between modules.
 *
 * D1 carries the level function (product of all coordinates) and the three
 * involutions sigma_1, sigma_n (single elements) and sigma_* (pairs; it
 * interchanges the two levels).  A2 and C1 elements embed into D1 of rank
 * n+1 / n+2 by inserting unit coordinates; the reverse projection checks that
 * the element actually lies in the embedded subvariety.
 */

#include <string>
#include <utility>
#include <vector>

#include "trlab/case_gen.hpp"
#include "trlab/errors.hpp"
#include "trlab/rat.hpp"

namespace trlab {

enum class Family { A1, D1, A2, C1 };

std::string family_name(Family f);
Family family_parse(const std::string& name);

/// Number of coordinates an element of the family/rank carries.
std::size_t coord_count(Family f, int n);
/// Smallest supported rank of the family.
int min_rank(Family f);

class CrystalElement {
public:
    CrystalElement(Family family, int n, std::vector<Rat> coords);

    Family family() const { return family_; }
    int rank() const { return n_; }
    const std::vector<Rat>& coords() const { return coords_; }

    /// x_i, 1 <= i <= n (any family).
    const Rat& x(int i) const { return coords_[pos_x(i)]; }
    /// Barred coordinate: D1 needs 1 <= i <= n-1, A2/C1 accept 1 <= i <= n.
    const Rat& xbar(int i) const { return coords_[pos_xbar(i)]; }
    /// x_0, C1 only.
    const Rat& x0() const;

    std::size_t pos_x(int i) const;
    std::size_t pos_xbar(int i) const;

    friend bool operator==(const CrystalElement& a, const CrystalElement& b) {
        return a.family_ == b.family_ && a.n_ == b.n_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const CrystalElement& a, const CrystalElement& b) {
        return !(a == b);
    }

    std::string to_string() const;

private:
    Family family_;
    int n_;
    std::vector<Rat> coords_;
};

/// Product of all 2n-1 coordinates; D1 only.
Rat level(const CrystalElement& x);

enum class SigmaKind { one, top, star };
std::string sigma_name(SigmaKind a);
SigmaKind sigma_parse(const std::string& name);

/// sigma_1 or sigma_n on a single D1 element (sigma_* needs a pair).
CrystalElement sigma(SigmaKind a, const CrystalElement& x);

/// Any of the three involutions on a D1 pair; each is an involution, they
/// pairwise commute, and sigma_* interchanges the levels of the pair.
std::pair<CrystalElement, CrystalElement> sigma_pair(
    SigmaKind a, const CrystalElement& x, const CrystalElement& y);

/// A2 rank n -> D1 rank n+1; C1 rank n -> D1 rank n+2 (see file header).
CrystalElement embed(const CrystalElement& x);

/// Inverse of embed; throws ReductionViolated if the element is not in the
/// embedded subvariety (inserted coordinates 1, matching C1 end copies).
CrystalElement project(const CrystalElement& d1, Family target);

/// Geometric Kashiwara operator on A1: x_i *= c, x_{i+1} /= c, indices mod n.
CrystalElement kashiwara_A(int i, const Rat& c, const CrystalElement& x);

/// Seeded random element with positive height-bounded coordinates.
CrystalElement random_element(SplitMix64& rng, Family f, int n, long height = 50);

}  // namespace trlab

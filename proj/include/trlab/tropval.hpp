#pragma once
/**
 * @file tropval.hpp
 * @brief Max-plus semiring scalar and the deviation-budget companion.
 *
 * TropVal carries the max-plus semiring (R ∪ {-inf}, max, +): oplus is max
 * with identity -inf, otimes is + with identity 0, and odiv is subtraction,
 * defined only for a finite divisor.  Values are exact rationals, so every
 * tropical identity in the test-suite is checked with exact arithmetic.
 * The min-plus convention is the image under negation and is not represented
 * separately.
 *
 * CountPair rides along the same subtraction-free expression templates to
 * certify the scaling limit: for X fixed and eps -> 0+, the scaled logarithm
 * eps*log f(e^{X/eps}) of a subtraction-free rational expression f differs
 * from the tropicalization by at most eps*log(S) from above and eps*log(R)
 * from below, where (S, R) obey
 *     leaf:        (1, 1)
 *     a oplus b:   (S_a + S_b, max(R_a, R_b))
 *     a otimes b:  (S_a * S_b, R_a * R_b)
 *     a odiv  b:   (S_a * R_b, R_a * S_b)
 * (for a polynomial, S is exactly its number of monomials and R stays 1,
 * giving the familiar log-sum-exp gap bound eps*log(#terms)).
 */

#include <string>

#include "trlab/errors.hpp"
#include "trlab/rat.hpp"

namespace trlab {

class TropVal {
public:
    /// Additive (oplus) identity -inf.
    TropVal() : bottom_(true) {}
    TropVal(Rat value) : value_(std::move(value)), bottom_(false) {}  // NOLINT
    TropVal(int value) : value_(value), bottom_(false) {}             // NOLINT

    static TropVal neg_inf() { return TropVal(); }
    static TropVal zero() { return TropVal(Rat(0)); }  ///< otimes identity

    bool is_neg_inf() const { return bottom_; }
    const Rat& value() const {
        if (bottom_) throw InfiniteOperand("value() of -inf");
        return value_;
    }

    /// oplus = max; -inf is the identity.
    friend TropVal oplus(const TropVal& a, const TropVal& b) {
        if (a.bottom_) return b;
        if (b.bottom_) return a;
        return TropVal(max(a.value_, b.value_));
    }

    /// otimes = +; -inf is absorbing.
    friend TropVal otimes(const TropVal& a, const TropVal& b) {
        if (a.bottom_ || b.bottom_) return neg_inf();
        return TropVal(a.value_ + b.value_);
    }

    /// odiv = -; requires a finite divisor.
    friend TropVal odiv(const TropVal& a, const TropVal& b) {
        if (b.bottom_) throw InfiniteOperand("tropical division by -inf");
        if (a.bottom_) return neg_inf();
        return TropVal(a.value_ - b.value_);
    }

    friend bool operator==(const TropVal& a, const TropVal& b) {
        if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const TropVal& a, const TropVal& b) { return !(a == b); }

    std::string to_string() const { return bottom_ ? "-inf" : value_.to_string(); }

private:
    Rat value_;
    bool bottom_ = true;
};

struct CountPair {
    double above = 1.0;  ///< S: bounds the deviation from above by eps*log(S)
    double below = 1.0;  ///< R: bounds the deviation from below by eps*log(R)

    friend CountPair oplus(const CountPair& a, const CountPair& b) {
        return {a.above + b.above, a.below > b.below ? a.below : b.below};
    }
    friend CountPair otimes(const CountPair& a, const CountPair& b) {
        return {a.above * b.above, a.below * b.below};
    }
    friend CountPair odiv(const CountPair& a, const CountPair& b) {
        return {a.above * b.below, a.below * b.above};
    }
};

}  // namespace trlab

#pragma once
/**
 * @file semiring.hpp
 * @brief Uniform add/mul/div names over fields and the max-plus semiring.
 *
 * The subtraction-free maps in this library are written once as templates
 * using sr_add / sr_mul / sr_div / sr_one and get instantiated at
 *   - exact rationals (the reference implementation),
 *   - arbitrary-precision floats (scaling-limit evaluation),
 *   - TropVal (the tropicalized maps: max-plus),
 *   - CountPair (monomial-count certificates for the scaling limit).
 * This is exactly the ultradiscretization dictionary + -> max, * -> +,
 * / -> - applied at the code level: the same expression tree, two semirings.
 */

#include "trlab/tropval.hpp"

namespace trlab {

template <class S>
inline S sr_add(const S& a, const S& b) { return a + b; }
template <class S>
inline S sr_mul(const S& a, const S& b) { return a * b; }
template <class S>
inline S sr_div(const S& a, const S& b) { return a / b; }
template <class S>
inline S sr_one() { return S(1); }

inline TropVal sr_add(const TropVal& a, const TropVal& b) { return oplus(a, b); }
inline TropVal sr_mul(const TropVal& a, const TropVal& b) { return otimes(a, b); }
inline TropVal sr_div(const TropVal& a, const TropVal& b) { return odiv(a, b); }
template <>
inline TropVal sr_one<TropVal>() { return TropVal::zero(); }

inline CountPair sr_add(const CountPair& a, const CountPair& b) { return oplus(a, b); }
inline CountPair sr_mul(const CountPair& a, const CountPair& b) { return otimes(a, b); }
inline CountPair sr_div(const CountPair& a, const CountPair& b) { return odiv(a, b); }
template <>
inline CountPair sr_one<CountPair>() { return CountPair{}; }

/// 1/a in the semiring.
template <class S>
inline S sr_inv(const S& a) { return sr_div(sr_one<S>(), a); }

}  // namespace trlab

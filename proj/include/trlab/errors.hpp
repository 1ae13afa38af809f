#pragma once
/**
 * @file errors.hpp
 * @brief Typed error hierarchy shared by every module.
 *
 * All failures surface as exceptions derived from trlab::Error so the CLI can
 * map "bad input" uniformly to exit code 2 and keep exit code 1 for genuine
 * property violations.  Each concrete type names the contract it guards; the
 * message carries the offending values.
 */

#include <stdexcept>
#include <string>

namespace trlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define TRLAB_ERROR_TYPE(NAME)                                            \
    struct NAME : Error {                                                 \
        explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
    }

// exact arithmetic
TRLAB_ERROR_TYPE(DivisionByZero);   ///< division by an exact zero
TRLAB_ERROR_TYPE(InfiniteOperand);  ///< tropical division by the additive identity
TRLAB_ERROR_TYPE(ParseFailure);     ///< malformed numeric literal
TRLAB_ERROR_TYPE(NonFiniteInput);   ///< NaN/Inf reached an exactness-only routine

// crystal elements and maps
TRLAB_ERROR_TYPE(WrongFamily);      ///< operation applied to an unsupported family
TRLAB_ERROR_TYPE(ZeroScale);        ///< scaling a coordinate by zero
TRLAB_ERROR_TYPE(ZeroInput);        ///< coordinate that must be nonzero is zero
TRLAB_ERROR_TYPE(SingularInput);    ///< a map denominator vanished
TRLAB_ERROR_TYPE(SingularInversion);///< a matrix inversion lost invertibility
TRLAB_ERROR_TYPE(ReductionViolated);///< reduced-map precondition broken
TRLAB_ERROR_TYPE(IndexOutOfRange);  ///< index outside the declared range

// bilinear system
TRLAB_ERROR_TYPE(SingularSystem);   ///< linear solve hit a zero pivot
TRLAB_ERROR_TYPE(NonGenericInput);  ///< genericity assumption (nonzero data) broken
TRLAB_ERROR_TYPE(LevelMismatch);    ///< product-of-coordinates consistency failed
TRLAB_ERROR_TYPE(NotASolution);     ///< claimed solution fails a residual check

// fermionic sums
TRLAB_ERROR_TYPE(PoleAtMomentum);   ///< exp-weight evaluated at one of its poles
TRLAB_ERROR_TYPE(DeltaPole);        ///< Cauchy-type weight with coinciding momenta
TRLAB_ERROR_TYPE(OddnessViolation); ///< time array required to be odd is not
TRLAB_ERROR_TYPE(NoRationalPartner);///< exact partner momentum does not exist
TRLAB_ERROR_TYPE(RootFindFailure);  ///< numeric partner search did not converge
TRLAB_ERROR_TYPE(PoleInA);          ///< auxiliary polynomial evaluated at a root
TRLAB_ERROR_TYPE(LimitUndefined);   ///< symbolic limit has a negative power

// harness
TRLAB_ERROR_TYPE(ConfigError);      ///< malformed configuration / CLI input

#undef TRLAB_ERROR_TYPE

}  // namespace trlab

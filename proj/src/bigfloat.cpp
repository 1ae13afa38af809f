#include "trlab/bigfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace trlab {

mpfr_prec_t default_precision() {
    static const mpfr_prec_t prec = [] {
        const char* env = std::getenv("TRLAB_PRECISION");
        if (env) {
            long bits = std::strtol(env, nullptr, 10);
            if (bits >= 64) return static_cast<mpfr_prec_t>(bits);
        }
        return static_cast<mpfr_prec_t>(256);
    }();
    return prec;
}

BigFloat BigFloat::from_long(long n, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_si(out.v_, n, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::from_rat(const Rat& q, mpfr_prec_t prec) {
    BigFloat out(prec);
    mpfr_set_q(out.v_, q.raw().backend().data(), MPFR_RNDN);
    return out;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t prec) {
    BigFloat out(prec);
    if (mpfr_set_str(out.v_, text.c_str(), 10, MPFR_RNDN) != 0)
        throw ParseFailure("malformed float literal: '" + text + "'");
    return out;
}

namespace {

mpfr_prec_t joint_prec(const BigFloat& a, const BigFloat& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
}

}  // namespace

BigFloat BigFloat::operator-() const {
    BigFloat out(precision());
    mpfr_neg(out.v_, v_, MPFR_RNDN);
    return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint_prec(a, b));
    mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint_prec(a, b));
    mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint_prec(a, b));
    mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw DivisionByZero("float division by zero");
    BigFloat out(joint_prec(a, b));
    mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
}

BigFloat abs(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_abs(out.v_, a.v_, MPFR_RNDN);
    return out;
}

BigFloat sqrt(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_sqrt(out.v_, a.v_, MPFR_RNDN);
    return out;
}

BigFloat exp(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_exp(out.v_, a.v_, MPFR_RNDN);
    return out;
}

BigFloat log(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_log(out.v_, a.v_, MPFR_RNDN);
    return out;
}

BigFloat pow_int(const BigFloat& a, long e) {
    BigFloat out(a.precision());
    if (e < 0 && a.is_zero()) throw DivisionByZero("zero to a negative power");
    mpfr_pow_si(out.v_, a.v_, e, MPFR_RNDN);
    return out;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

std::string BigFloat::to_string() const {
    // ~0.302 decimal digits per bit, plus guard digits, gives a round-trip.
    long digits = static_cast<long>(static_cast<double>(precision()) * 0.30103) + 3;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*RNe", static_cast<int>(digits - 1), v_);
    return std::string(buf.data());
}

BigFloat rel_diff(const BigFloat& a, const BigFloat& b) {
    BigFloat diff = abs(a - b);
    BigFloat scale = max(abs(a), abs(b));
    BigFloat tiny = BigFloat::from_long(1, scale.precision());
    for (int k = 0; k < 16; ++k) tiny = tiny / BigFloat::from_long(2, scale.precision());
    if (scale < tiny) return diff;
    return diff / scale;
}

BigFloat rel_diff(const BigC& a, const BigC& b) {
    BigFloat diff = abs(a - b);
    BigFloat scale = max(abs(a), abs(b));
    BigFloat tiny = BigFloat::from_long(1, scale.precision());
    for (int k = 0; k < 16; ++k) tiny = tiny / BigFloat::from_long(2, scale.precision());
    if (scale < tiny) return diff;
    return diff / scale;
}

}  // namespace trlab

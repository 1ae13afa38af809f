#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trlab/bigfloat.hpp"
#include "trlab/case_gen.hpp"
#include "trlab/gauss_rat.hpp"
#include "trlab/rat.hpp"
#include "trlab/tropval.hpp"

using namespace trlab;

TEST_CASE("rational arithmetic and canonical form") {
    CHECK(Rat(BigInt(1), BigInt(2)) + Rat(BigInt(1), BigInt(3)) == Rat(BigInt(5), BigInt(6)));
    CHECK(Rat::parse("-2/6") == Rat(BigInt(-1), BigInt(3)));
    CHECK(Rat::parse("-2/6").to_string() == "-1/3");
    CHECK(Rat::parse("0.5") == Rat(BigInt(1), BigInt(2)));
    CHECK(Rat::parse("-3.25") == Rat(BigInt(-13), BigInt(4)));
    CHECK(Rat::parse("7").to_string() == "7");
    CHECK(inv(Rat(BigInt(3), BigInt(4))) == Rat(BigInt(4), BigInt(3)));
    CHECK(pow_int(Rat(BigInt(2), BigInt(3)), -2) == Rat(BigInt(9), BigInt(4)));
    CHECK_THROWS_AS(Rat(1) / Rat(0), DivisionByZero);
    CHECK_THROWS_AS(inv(Rat(0)), DivisionByZero);
    CHECK_THROWS_AS(Rat::parse("1//2"), ParseFailure);
    CHECK_THROWS_AS(Rat::parse("1/0"), DivisionByZero);
}

TEST_CASE("rational round trips and field laws on random values") {
    SplitMix64 rng(0x6b5d2c3a11ULL);
    for (int k = 0; k < 200; ++k) {
        Rat a = rng.rat_nonzero();
        Rat b = rng.rat_nonzero();
        CHECK(Rat::parse(a.to_string()) == a);
        CHECK((a + b) - b == a);
        CHECK((a * b) / b == a);
        CHECK(a * (b + Rat(1)) == a * b + a);
    }
}

TEST_CASE("Gaussian rational field") {
    GaussRat i = GaussRat::i();
    CHECK(i * i == GaussRat(-1));
    CHECK(GaussRat(1) / i == -i);
    CHECK(GaussRat(Rat(1), Rat(2)).conj() == GaussRat(Rat(1), Rat(-2)));
    CHECK(pow_int(i, 4) == GaussRat(1));
    CHECK(pow_int(GaussRat(Rat(1), Rat(1)), -1) ==
          GaussRat(Rat(BigInt(1), BigInt(2)), Rat(BigInt(-1), BigInt(2))));
    CHECK_THROWS_AS(GaussRat(1) / GaussRat(0), DivisionByZero);
}

TEST_CASE("Gaussian rational strings round-trip") {
    auto check_roundtrip = [](const GaussRat& z) {
        CHECK(GaussRat::parse(z.to_string()) == z);
    };
    check_roundtrip(GaussRat(Rat::parse("1/2"), Rat::parse("-3/4")));
    check_roundtrip(GaussRat::i());
    check_roundtrip(-GaussRat::i());
    check_roundtrip(GaussRat(Rat(5)));
    check_roundtrip(GaussRat(Rat(0), Rat(7)));
    check_roundtrip(GaussRat(Rat(-2), Rat(-1)));
    CHECK(GaussRat::parse("1/2-3/4i") == GaussRat(Rat::parse("1/2"), Rat::parse("-3/4")));
    CHECK(GaussRat::parse("0.5+0.25i") == GaussRat(Rat::parse("1/2"), Rat::parse("1/4")));
    CHECK(GaussRat::parse("-i") == -GaussRat::i());

    SplitMix64 rng(0x77aa22ULL);
    for (int k = 0; k < 100; ++k) {
        GaussRat z(rng.rat_nonzero(), rng.rat_nonzero());
        check_roundtrip(z);
        GaussRat w(rng.rat_nonzero(), rng.rat_nonzero());
        CHECK((z * w) / w == z);
        CHECK((z * w).conj() == z.conj() * w.conj());
    }
}

TEST_CASE("big float precision contract") {
    BigFloat a = BigFloat::from_rat(Rat(BigInt(1), BigInt(3)), 128);
    BigFloat b = BigFloat::from_rat(Rat(BigInt(1), BigInt(7)), 256);
    CHECK((a + b).precision() == 256);
    CHECK(BigFloat::from_long(2).precision() == default_precision());
    CHECK_THROWS_AS(a / BigFloat(128), DivisionByZero);

    // Doubling the working precision moves the result by less than 2^-(P-8):
    // the same arithmetic chain evaluated at P and 2P bits agrees to P-8 bits.
    for (mpfr_prec_t prec : {static_cast<mpfr_prec_t>(128), static_cast<mpfr_prec_t>(256)}) {
        auto chain = [](mpfr_prec_t p) {
            BigFloat x = BigFloat::from_rat(Rat(BigInt(355), BigInt(113)), p);
            BigFloat y = exp(log(x) / BigFloat::from_long(3, p));
            return (y * y * y - x) + sqrt(x) / (y + BigFloat::from_long(1, p));
        };
        BigFloat lo = chain(prec);
        BigFloat hi = chain(2 * prec);
        BigFloat bound = pow_int(BigFloat::from_long(2, 64), -(static_cast<long>(prec) - 8));
        CHECK(rel_diff(lo, hi) < bound);
    }
}

TEST_CASE("big float strings round-trip") {
    BigFloat x = BigFloat::from_rat(Rat(BigInt(22), BigInt(7)), 192);
    BigFloat y = BigFloat::parse(x.to_string(), 192);
    CHECK(x == y);
    CHECK(BigFloat::parse("1.5").to_double() == 1.5);
    CHECK_THROWS_AS(BigFloat::parse("zebra"), ParseFailure);
}

TEST_CASE("complex big float matches exact Gaussian arithmetic") {
    auto lift = [](const GaussRat& z) {
        return BigC(BigFloat::from_rat(z.re()), BigFloat::from_rat(z.im()));
    };
    SplitMix64 rng(0x9e1fULL);
    for (int k = 0; k < 50; ++k) {
        GaussRat z(rng.rat_nonzero(), rng.rat_nonzero());
        GaussRat w(rng.rat_nonzero(), rng.rat_nonzero());
        // products, quotients, and integer powers of dyadic-exact inputs make
        // small relative errors only
        BigFloat err = rel_diff(lift(z) * lift(w), lift(z * w));
        CHECK(err.to_double() < 1e-70);
        err = rel_diff(lift(z) / lift(w), lift(z / w));
        CHECK(err.to_double() < 1e-70);
        err = rel_diff(pow_int(lift(z), 5), lift(pow_int(z, 5)));
        CHECK(err.to_double() < 1e-70);
    }
    CHECK(BigC::i() * BigC::i() == BigC(-1));
    CHECK_THROWS_AS(BigC(1) / BigC(0), DivisionByZero);
}

TEST_CASE("max-plus semiring") {
    CHECK(oplus(TropVal(3), TropVal(5)) == TropVal(5));
    CHECK(otimes(TropVal(3), TropVal(5)) == TropVal(8));
    CHECK(odiv(TropVal(3), TropVal(5)) == TropVal(-2));
    CHECK(oplus(TropVal::neg_inf(), TropVal(4)) == TropVal(4));
    CHECK(otimes(TropVal::neg_inf(), TropVal(4)).is_neg_inf());
    CHECK(otimes(TropVal::zero(), TropVal(4)) == TropVal(4));
    CHECK_THROWS_AS(odiv(TropVal(1), TropVal::neg_inf()), InfiniteOperand);
    CHECK_THROWS_AS(TropVal::neg_inf().value(), InfiniteOperand);

    SplitMix64 rng(0x5150ULL);
    for (int k = 0; k < 200; ++k) {
        TropVal a(rng.rat_nonzero());
        TropVal b(rng.rat_nonzero());
        TropVal c(rng.rat_nonzero());
        CHECK(otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c)));
        CHECK(oplus(a, b) == oplus(b, a));
        CHECK(odiv(otimes(a, b), b) == a);
    }
}

TEST_CASE("count pair tracks monomial counts") {
    // (x + y + z) * (x + y): 6 monomials, polynomial => below stays 1.
    CountPair x, y, z;
    CountPair p = otimes(oplus(oplus(x, y), z), oplus(x, y));
    CHECK(p.above == doctest::Approx(6.0));
    CHECK(p.below == doctest::Approx(1.0));
    CountPair q = odiv(p, oplus(x, y));
    CHECK(q.above == doctest::Approx(6.0));
    CHECK(q.below == doctest::Approx(2.0));
}

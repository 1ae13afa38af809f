#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trlab/case_gen.hpp"
#include "trlab/crystal.hpp"
#include "trlab/json_io.hpp"

using namespace trlab;

namespace {

CrystalElement make(Family f, int n, std::vector<long> v) {
    std::vector<Rat> c(v.begin(), v.end());
    return CrystalElement(f, n, std::move(c));
}

const CrystalElement d1_12345 = make(Family::D1, 3, {1, 2, 3, 4, 5});

}  // namespace

TEST_CASE("element construction enforces layout and nonzero coordinates") {
    CHECK(coord_count(Family::A1, 4) == 4);
    CHECK(coord_count(Family::D1, 3) == 5);
    CHECK(coord_count(Family::A2, 2) == 4);
    CHECK(coord_count(Family::C1, 1) == 3);
    CHECK_THROWS_AS(make(Family::D1, 3, {1, 2, 3, 4}), IndexOutOfRange);
    CHECK_THROWS_AS(make(Family::D1, 2, {1, 2, 3}), IndexOutOfRange);
    CHECK_THROWS_AS(make(Family::D1, 3, {1, 2, 0, 4, 5}), ZeroInput);
    CHECK(family_parse("C1") == Family::C1);
    CHECK(family_name(Family::A2) == "A2");
}

TEST_CASE("index maps follow the display order") {
    CHECK(d1_12345.x(1) == Rat(1));
    CHECK(d1_12345.x(3) == Rat(3));
    CHECK(d1_12345.xbar(2) == Rat(4));
    CHECK(d1_12345.xbar(1) == Rat(5));
    CHECK_THROWS_AS(d1_12345.xbar(3), IndexOutOfRange);

    CrystalElement a2 = make(Family::A2, 2, {1, 2, 3, 4});
    CHECK(a2.x(2) == Rat(2));
    CHECK(a2.xbar(2) == Rat(3));
    CHECK(a2.xbar(1) == Rat(4));

    CrystalElement c1 = make(Family::C1, 2, {9, 1, 2, 3, 4});
    CHECK(c1.x0() == Rat(9));
    CHECK(c1.x(1) == Rat(1));
    CHECK(c1.xbar(2) == Rat(3));
    CHECK(c1.xbar(1) == Rat(4));
    CHECK_THROWS_AS(d1_12345.x0(), WrongFamily);
}

TEST_CASE("level is the product of all D1 coordinates") {
    CHECK(level(d1_12345) == Rat(120));
    CHECK(level(make(Family::D1, 3, {1, 1, 1, 1, 1})) == Rat(1));
    CHECK(level(sigma(SigmaKind::top, d1_12345)) == Rat(120));
    CHECK_THROWS_AS(level(make(Family::A1, 3, {1, 2, 3})), WrongFamily);
}

TEST_CASE("sigma_1 and sigma_n act as displayed") {
    CHECK(sigma(SigmaKind::one, d1_12345) == make(Family::D1, 3, {5, 2, 3, 4, 1}));
    std::vector<Rat> expected{Rat(1), Rat(6), Rat(BigInt(1), BigInt(3)), Rat(12), Rat(5)};
    CHECK(sigma(SigmaKind::top, d1_12345) == CrystalElement(Family::D1, 3, expected));
    CHECK_THROWS_AS(sigma(SigmaKind::star, d1_12345), WrongFamily);
    CHECK_THROWS_AS(sigma(SigmaKind::one, make(Family::A1, 3, {1, 2, 3})), WrongFamily);
}

TEST_CASE("sigma_star swaps coordinates across the pair") {
    CrystalElement y = make(Family::D1, 3, {6, 7, 8, 9, 10});
    auto [sx, sy] = sigma_pair(SigmaKind::star, d1_12345, y);
    CHECK(sx == make(Family::D1, 3, {10, 9, 8, 7, 6}));
    CHECK(sy == make(Family::D1, 3, {5, 4, 3, 2, 1}));
    CHECK(level(sx) == level(y));
    CHECK(level(sy) == level(d1_12345));
}

TEST_CASE("involutions square to the identity and pairwise commute") {
    SplitMix64 rng(0xc0ffee01ULL);
    const SigmaKind kinds[] = {SigmaKind::one, SigmaKind::top, SigmaKind::star};
    for (int rep = 0; rep < 30; ++rep) {
        for (int n : {3, 4, 5}) {
            CrystalElement x = random_element(rng, Family::D1, n);
            CrystalElement y = random_element(rng, Family::D1, n);
            for (SigmaKind a : kinds) {
                auto once = sigma_pair(a, x, y);
                auto twice = sigma_pair(a, once.first, once.second);
                CHECK(twice.first == x);
                CHECK(twice.second == y);
                if (a != SigmaKind::star) {
                    CHECK(level(once.first) == level(x));
                    CHECK(level(once.second) == level(y));
                } else {
                    CHECK(level(once.first) == level(y));
                    CHECK(level(once.second) == level(x));
                }
                for (SigmaKind b : kinds) {
                    auto ab = sigma_pair(a, sigma_pair(b, x, y).first,
                                         sigma_pair(b, x, y).second);
                    auto ba = sigma_pair(b, sigma_pair(a, x, y).first,
                                         sigma_pair(a, x, y).second);
                    CHECK(ab.first == ba.first);
                    CHECK(ab.second == ba.second);
                }
            }
        }
    }
}

TEST_CASE("embeddings insert unit coordinates and project back") {
    CrystalElement a2 = make(Family::A2, 2, {2, 3, 4, 5});
    CHECK(embed(a2) == make(Family::D1, 3, {2, 3, 1, 4, 5}));
    CHECK(project(embed(a2), Family::A2) == a2);

    CrystalElement c1 = make(Family::C1, 1, {7, 2, 3});
    CHECK(embed(c1) == make(Family::D1, 3, {7, 2, 1, 3, 7}));
    CHECK(project(embed(c1), Family::C1) == c1);

    CrystalElement embedded_ones = embed(make(Family::A2, 2, {1, 1, 1, 1}));
    for (const Rat& c : embedded_ones.coords()) CHECK(c == Rat(1));

    CHECK_THROWS_AS(embed(d1_12345), WrongFamily);
    CHECK_THROWS_AS(project(d1_12345, Family::A2), ReductionViolated);
    CHECK_THROWS_AS(project(make(Family::D1, 3, {7, 2, 1, 3, 8}), Family::C1),
                    ReductionViolated);

    SplitMix64 rng(0xabcdef02ULL);
    for (int rep = 0; rep < 20; ++rep) {
        CrystalElement a = random_element(rng, Family::A2, 3);
        CHECK(project(embed(a), Family::A2) == a);
        CrystalElement c = random_element(rng, Family::C1, 2);
        CHECK(project(embed(c), Family::C1) == c);
    }
}

TEST_CASE("geometric Kashiwara operator") {
    CrystalElement x = make(Family::A1, 3, {1, 2, 3});
    CHECK(kashiwara_A(1, Rat(2), x) == make(Family::A1, 3, {2, 1, 3}));
    CHECK(kashiwara_A(1, Rat(1), x) == x);
    // index arithmetic is cyclic: i = n wraps onto x_n, x_1
    CrystalElement w = kashiwara_A(3, Rat(5), x);
    CHECK(w.x(3) == Rat(15));
    CHECK(w.x(1) == Rat(BigInt(1), BigInt(5)));
    CHECK(kashiwara_A(4, Rat(5), x) == kashiwara_A(1, Rat(5), x));
    CHECK_THROWS_AS(kashiwara_A(1, Rat(0), x), ZeroScale);
    CHECK_THROWS_AS(kashiwara_A(1, Rat(2), d1_12345), WrongFamily);

    SplitMix64 rng(0x1234ULL);
    for (int rep = 0; rep < 40; ++rep) {
        CrystalElement e = random_element(rng, Family::A1, 4);
        Rat c = rng.rat_pos();
        Rat d = rng.rat_pos();
        int i = static_cast<int>(rng.range(1, 4));
        CHECK(kashiwara_A(i, c, kashiwara_A(i, d, e)) == kashiwara_A(i, c * d, e));
        CHECK(kashiwara_A(i, inv(c), kashiwara_A(i, c, e)) == e);
    }
}

TEST_CASE("JSON round trip") {
    Json j = element_to_json(d1_12345);
    CHECK(j.at("family") == "D1");
    CHECK(j.at("coords").size() == 5);
    CHECK(element_from_json(j) == d1_12345);

    Json parsed = Json::parse(R"({"family":"D1","n":3,"coords":["1","2","3","4","5"]})");
    CHECK(element_from_json(parsed) == d1_12345);

    SplitMix64 rng(0x98765ULL);
    for (Family f : {Family::A1, Family::D1, Family::A2, Family::C1}) {
        CrystalElement e = random_element(rng, f, min_rank(f) + 1);
        CHECK(element_from_json(element_to_json(e)) == e);
    }
    CHECK_THROWS_AS(element_from_json(Json::parse(R"({"family":"Z9"})")), ConfigError);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modchev/field.hpp"

using namespace modchev;

static std::vector<const FieldSpec*> small_fields() {
    return {FieldSpec::gf(2),    FieldSpec::gf(3),    FieldSpec::gf(5),    FieldSpec::gf(7),
            FieldSpec::gf(2, 2), FieldSpec::gf(2, 3), FieldSpec::gf(3, 2), FieldSpec::gf(5, 2)};
}

TEST_CASE("prime field basics") {
    auto F2 = FieldSpec::gf(2);
    CHECK((F2->one() + F2->one()).is_zero());
    auto F3 = FieldSpec::gf(3);
    CHECK((F3->from_int(2) * F3->from_int(2)) == F3->one());
}

TEST_CASE("GF(4) multiplication reduces by the frozen modulus") {
    auto F4 = FieldSpec::gf(2, 2);
    auto t = F4->generator();
    CHECK(t * t == t + F4->one()); // t^2 = t+1 mod t^2+t+1
}

TEST_CASE("rational arithmetic is exact") {
    auto Q = FieldSpec::rationals();
    auto a = Q->parse("2/3"), b = Q->parse("1/6");
    CHECK((a + b) == Q->parse("5/6"));
    CHECK((a + b).str() == "5/6");
}

TEST_CASE("min_nonneg_int") {
    CHECK(FieldSpec::gf(3)->from_int(2).min_nonneg_int() == 2);
    CHECK(!FieldSpec::gf(2, 2)->generator().min_nonneg_int().has_value());
    CHECK(FieldSpec::gf(5)->from_int(-1).min_nonneg_int() == 4);
    for (long r = 0; r < 7; ++r) CHECK(FieldSpec::gf(7)->from_int(r).min_nonneg_int() == r);
}

TEST_CASE("sqrt in characteristic 2") {
    auto F2 = FieldSpec::gf(2);
    CHECK(F2->one().sqrt_char2() == F2->one());
    auto F4 = FieldSpec::gf(2, 2);
    auto t = F4->generator();
    // oracle: exhaust GF(4) for the square root of t
    FieldElement expect = F4->zero();
    int hits = 0;
    for (const auto& b : F4->all_elements())
        if (b * b == t) {
            expect = b;
            ++hits;
        }
    REQUIRE(hits == 1);
    CHECK(expect == t + F4->one());
    CHECK(t.sqrt_char2() == expect);
    CHECK(F4->zero().sqrt_char2().is_zero());
    for (int k = 1; k <= 4; ++k) {
        auto F = FieldSpec::gf(2, k);
        for (const auto& x : F->all_elements()) CHECK((x * x).sqrt_char2() == x);
    }
    CHECK_THROWS_AS(FieldSpec::gf(3)->one().sqrt_char2(), WrongCharacteristic);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(20240811);
    for (auto* F : small_fields()) {
        auto elems = F->all_elements();
        auto rnd = [&] { return elems[rng() % elems.size()]; };
        for (int iter = 0; iter < 200; ++iter) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + (-a)).is_zero());
            if (!a.is_zero()) CHECK(a * a.inverse() == F->one());
            // Frobenius is additive
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
        }
    }
    // rationals with a few fixed values
    auto Q = FieldSpec::rationals();
    std::vector<FieldElement> qs = {Q->parse("0"), Q->parse("1"), Q->parse("-7/3"), Q->parse("22/7"),
                                    Q->parse("-2")};
    for (const auto& a : qs)
        for (const auto& b : qs)
            for (const auto& c : qs) {
                CHECK(a * (b + c) == a * b + a * c);
                if (!b.is_zero()) CHECK((a / b) * b == a);
            }
}

TEST_CASE("division by zero and mixed fields are rejected") {
    auto F3 = FieldSpec::gf(3);
    CHECK_THROWS_AS(F3->one() / F3->zero(), DivisionByZero);
    CHECK_THROWS_AS(F3->one() + FieldSpec::gf(5)->one(), MixedFields);
}

TEST_CASE("text round trip is exact") {
    for (auto* F : small_fields())
        for (const auto& x : F->all_elements()) CHECK(F->parse(x.str()) == x);
    auto Q = FieldSpec::rationals();
    for (auto s : {"5/6", "-3", "0", "1", "123456789123456787/987654320"}) {
        CHECK(Q->parse(s).str() == s);
    }
    auto F4 = FieldSpec::gf(2, 2);
    CHECK(F4->parse("t+1") == F4->generator() + F4->one());
    CHECK(F4->parse("-1") == F4->one());
}

TEST_CASE("interned specs share moduli") {
    CHECK(FieldSpec::gf(2, 2) == FieldSpec::gf(2, 2));
    CHECK(FieldSpec::gf(2, 2)->modulus() == std::vector<long>({1, 1, 1}));
    CHECK(FieldSpec::gf(2, 3)->modulus() == std::vector<long>({1, 1, 0, 1}));
    CHECK(FieldSpec::gf(3, 2)->modulus() == std::vector<long>({1, 0, 1}));
    CHECK(FieldSpec::gf(5, 2)->modulus() == std::vector<long>({3, 0, 1}));
}

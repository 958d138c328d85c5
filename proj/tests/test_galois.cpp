#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ers/galois.hpp"
#include "oracles.hpp"

using ers::FieldSpec;
using ers::Symbol;

TEST_CASE("construction and defaults") {
    auto f3 = FieldSpec::make(3);
    CHECK(f3.prim_poly() == 0b1011);
    CHECK(f3.q() == 8);
    // alpha * alpha^2 = alpha^3 = alpha + 1
    CHECK(f3.mul(f3.alpha_pow(1), f3.alpha_pow(2)) == 0b011);

    auto f2 = FieldSpec::make(2);
    CHECK(f2.q() == 4);  // log table covers 4 entries, 3 nonzero powers
    for (int k = 0; k < 3; ++k) CHECK(f2.log(f2.alpha_pow(k)) == k);

    CHECK_NOTHROW(FieldSpec::make(5, 0b100101));
    CHECK_THROWS_WITH_AS(FieldSpec::make(5, 0b100001),
                         doctest::Contains("alpha^5 repeats alpha^0"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(11), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(4, 0b100101), std::invalid_argument);  // degree 5, not 4
}

TEST_CASE("addition is characteristic-two") {
    auto f = FieldSpec::make(4);
    for (int x = 0; x < f.q(); ++x) {
        CHECK(f.add(Symbol(x), Symbol(x)) == 0);
        CHECK(f.add(Symbol(x), 0) == Symbol(x));
    }
    auto f3 = FieldSpec::make(3);
    CHECK(f3.add(0b011, 0b101) == 0b110);
}

TEST_CASE("multiplication, inverse, pow") {
    auto f = FieldSpec::make(3);
    for (int a = 0; a < 8; ++a) CHECK(f.mul(Symbol(a), 1) == Symbol(a));
    CHECK(f.mul(f.alpha_pow(2), f.alpha_pow(2)) == 0b110);  // alpha^4 = alpha^2 + alpha

    auto f5 = FieldSpec::make(5);
    CHECK_THROWS_AS(f5.inv(0), std::domain_error);
    for (int a = 1; a < 32; ++a) {
        // brute-force the unique multiplicative inverse
        int found = -1;
        for (int b = 1; b < 32; ++b)
            if (f5.mul(Symbol(a), Symbol(b)) == 1) {
                CHECK(found == -1);
                found = b;
            }
        CHECK(f5.inv(Symbol(a)) == Symbol(found));
        CHECK(f5.mul(f5.inv(Symbol(a)), Symbol(a)) == 1);
    }

    CHECK(f5.pow(0, 0) == 1);  // 0^0 = 1 by the evaluation-map convention
    CHECK(f5.pow(0, 3) == 0);
    CHECK(f5.pow(f5.alpha_pow(1), 31) == 1);
}

TEST_CASE("field axioms, exhaustive for n <= 5") {
    for (int n : {2, 3, 4, 5}) {
        auto f = FieldSpec::make(n);
        const int q = f.q();
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CHECK(f.mul(Symbol(a), Symbol(b)) == f.mul(Symbol(b), Symbol(a)));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.mul(f.mul(Symbol(a), Symbol(b)), Symbol(c)) ==
                          f.mul(Symbol(a), f.mul(Symbol(b), Symbol(c))));
                    CHECK(f.mul(Symbol(a), f.add(Symbol(b), Symbol(c))) ==
                          f.add(f.mul(Symbol(a), Symbol(b)), f.mul(Symbol(a), Symbol(c))));
                }
            }
    }
}

TEST_CASE("log/antilog consistency: powers of alpha enumerate the nonzero elements") {
    for (int n : {2, 3, 4, 5, 8}) {
        auto f = FieldSpec::make(n);
        std::vector<bool> seen(f.q(), false);
        for (int k = 0; k < f.q() - 1; ++k) {
            Symbol v = f.alpha_pow(k);
            CHECK(v != 0);
            CHECK(!seen[v]);
            seen[v] = true;
            CHECK(f.log(v) == k);
        }
    }
}

TEST_CASE("table multiplication agrees with schoolbook modulo the primitive polynomial") {
    auto f = FieldSpec::make(5);
    for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b)
            CHECK(f.mul(Symbol(a), Symbol(b)) ==
                  oracle::gf_mul_schoolbook(a, b, f.prim_poly(), 5));
}

TEST_CASE("binary composition round trip") {
    auto f = FieldSpec::make(4);
    CHECK(ers::bits_of(0, 4) == std::vector<std::uint8_t>{0, 0, 0, 0});
    for (int a = 0; a < 16; ++a) {
        auto bits = ers::bits_of(Symbol(a), 4);
        CHECK(ers::from_bits(bits, 4) == Symbol(a));
        for (int j = 0; j < 4; ++j) CHECK(bits[j] == ers::bit_of(Symbol(a), j));
    }
    // alpha in GF(8) is (0, 1, 0)
    CHECK(ers::bits_of(FieldSpec::make(3).alpha_pow(1), 3) ==
          std::vector<std::uint8_t>{0, 1, 0});
    std::vector<std::uint8_t> wrong{1, 0};
    CHECK_THROWS_AS(ers::from_bits(wrong, 3), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gasket/scalar.hpp"

using gasket::ExactScalar;

TEST_CASE("(1+sqrt2)(1-sqrt2) = -1") {
    ExactScalar a(1, 1, 0), b(1, -1, 0);
    CHECK(a * b == ExactScalar(-1, 0, 0));
}

TEST_CASE("normalization keeps a canonical form and round-trips the exponent") {
    ExactScalar x(4, 8, -3);
    CHECK(x.a == 1);
    CHECK(x.b == 2);
    CHECK(x.e == -1);
    CHECK(x == ExactScalar(1, 2, -1));
    CHECK(ExactScalar(0, 0, 5) == ExactScalar::zero());
    // Doubling then halving via the exponent is the identity.
    ExactScalar y(3, 5, 7);
    CHECK(y * ExactScalar::pow2(4) * ExactScalar::pow2(-4) == y);
}

TEST_CASE("sqrt2 powers") {
    ExactScalar s = ExactScalar::sqrt2_pow(1);
    CHECK(s * s == ExactScalar::pow2(1));
    CHECK(ExactScalar::sqrt2_pow(-3) * ExactScalar::sqrt2_pow(3) == ExactScalar::one());
    CHECK(ExactScalar::sqrt2_pow(-2) == ExactScalar::pow2(-1));
    // 1/sqrt(8) * sqrt(8) = 1
    ExactScalar w = ExactScalar::sqrt2_pow(-3);
    CHECK(w * ExactScalar(0, 2, 0) == ExactScalar::one());
}

TEST_CASE("ring axioms on random values") {
    std::mt19937_64 rng(7);
    auto pick = [&]() {
        return ExactScalar((std::int64_t)(rng() % 41) - 20, (std::int64_t)(rng() % 41) - 20,
                           (int)(rng() % 7) - 3);
    };
    for (int i = 0; i < 500; ++i) {
        ExactScalar x = pick(), y = pick(), z = pick();
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + ExactScalar::zero() == x);
        CHECK(x * ExactScalar::one() == x);
        CHECK(x - x == ExactScalar::zero());
    }
}

#include "doctest.h"

#include "geometry.hpp"

using namespace pqci;
using namespace pqci::geometry;

TEST_CASE("problem parameters derive from t") {
    ProblemParams p = ProblemParams::for_precision(3);
    CHECK(p.t == 3);
    CHECK(p.n == 9);
    CHECK(p.m == 27);
    CHECK(std::uint64_t(p.grid_size()) == 8);

    CHECK(ProblemParams::for_precision(4).m == 33);
    CHECK(ProblemParams::for_precision(62).n == 127);
    CHECK_THROWS_AS(ProblemParams::for_precision(1), Error);
    CHECK_THROWS_AS(ProblemParams::for_precision(63), Error);
}

TEST_CASE("circle parsing and validation") {
    Circle c = Circle::parse("3,5,2");
    CHECK(c == Circle{3, 5, 2});
    CHECK(c.to_string() == "3,5,2");
    CHECK_THROWS_AS(Circle::parse("3,5"), Error);
    CHECK_THROWS_AS(Circle::parse("3,5,x"), Error);
    CHECK_THROWS_AS(Circle::parse(""), Error);

    ProblemParams p = ProblemParams::for_precision(3);
    validate_circle(c, p);
    CHECK_THROWS_AS(validate_circle(Circle{0, 5, 2}, p), Error);  // below 1
    CHECK_THROWS_AS(validate_circle(Circle{8, 5, 2}, p), Error);  // 2^t out of range
}

TEST_CASE("intersection predicate is strict and symmetric") {
    // D = 1, R = (1+1)^2 = 4: intersecting.
    CHECK(intersects(Circle{2, 2, 1}, Circle{2, 3, 1}));
    // D = 9 = R: tangent circles do not count.
    CHECK(!intersects(Circle{1, 1, 1}, Circle{4, 1, 2}));
    // D = 32 > R = 4: disjoint.
    CHECK(!intersects(Circle{2, 2, 1}, Circle{6, 6, 1}));
    // Concentric containment satisfies D = 0 < R.
    CHECK(intersects(Circle{3, 3, 1}, Circle{3, 3, 2}));

    for (std::uint64_t s = 1; s < 200; s += 17) {
        Circle a{s, (s * 3) % 100 + 1, s % 7 + 1};
        Circle b{(s * 5) % 90 + 1, s % 50 + 1, s % 5 + 1};
        CHECK(intersects(a, b) == intersects(b, a));
    }
}

TEST_CASE("d_minus_r sign bit encodes the predicate") {
    const std::size_t n = 9;  // t = 3
    for (std::uint64_t ax = 1; ax < 8; ++ax)
        for (std::uint64_t ay = 1; ay < 8; ++ay)
            for (std::uint64_t ar = 1; ar < 8; ++ar)
                for (std::uint64_t br = 1; br < 8; ++br) {
                    Circle a{ax, ay, ar}, b{5, 4, br};
                    RegValue v = d_minus_r(a, b, n);
                    bool negative = (v >> (n - 1)) & 1;
                    CHECK(negative == intersects(a, b));
                }
}

TEST_CASE("oracle coefficients match the worked example") {
    OracleCoeffs k = oracle_coeffs(Circle{1, 1, 1}, 9);
    CHECK(std::uint64_t(k.k1) == 510);  // -2 mod 2^9
    CHECK(std::uint64_t(k.k2) == 510);
    CHECK(std::uint64_t(k.k3) == 510);
    CHECK(std::uint64_t(k.k4) == 1);    // 1 + 1 - 1
}

TEST_CASE("linearized form is congruent to d_minus_r for every valid input") {
    for (unsigned t = 2; t <= 3; ++t) {
        ProblemParams p = ProblemParams::for_precision(t);
        std::uint64_t hi = std::uint64_t(p.grid_size()) - 1;
        Circle bob{hi, 2, hi - 1};
        OracleCoeffs k = oracle_coeffs(bob, p.n);
        for (std::uint64_t x = 1; x <= hi; ++x)
            for (std::uint64_t y = 1; y <= hi; ++y)
                for (std::uint64_t r = 1; r <= hi; ++r) {
                    Circle alice{x, y, r};
                    CHECK(linearized_d_minus_r(x, y, r, k, p.n) ==
                          d_minus_r(alice, bob, p.n));
                }
    }
}

TEST_CASE("linearized form handles wide registers") {
    const std::size_t n = 127;  // t = 62
    Circle bob{(1ull << 62) - 1, 3, (1ull << 61) + 5};
    OracleCoeffs k = oracle_coeffs(bob, n);
    Circle alice{(1ull << 61) - 7, (1ull << 60) + 1, 9};
    CHECK(linearized_d_minus_r(alice.x, alice.y, alice.r, k, n) ==
          d_minus_r(alice, bob, n));
}

#pragma once

#include <cstdint>
#include <string>

#include "sparsesim.hpp"

namespace pqci::geometry {

// Grid precision t fixes everything else: coordinates live in [1, 2^t - 1],
// arithmetic registers are n = 2t + 3 bits wide and each quantum particle
// carries m = 3n qubits.
struct ProblemParams {
    unsigned t = 0;
    std::size_t n = 0;
    std::size_t m = 0;

    static ProblemParams for_precision(unsigned t);
    RegValue grid_size() const { return RegValue(1) << t; }  // T = 2^t
};

struct Circle {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t r = 0;

    static Circle parse(const std::string& text);  // "x,y,r"
    std::string to_string() const;
    bool operator==(const Circle&) const = default;
};

void validate_circle(const Circle& c, const ProblemParams& p);

// Strict D < R, tangency counts as non-intersecting.
bool intersects(const Circle& c1, const Circle& c2);

// (D - R) mod 2^n; the sign of D - R is the top bit since |D - R| < 2^(n-1).
RegValue d_minus_r(const Circle& c1, const Circle& c2, std::size_t n);

struct OracleCoeffs {
    RegValue k1 = 0, k2 = 0, k3 = 0, k4 = 0;
};

// Coefficients Bob compiles from his own circle, chosen so that
// x^2 + y^2 - r^2 + x*k1 + y*k2 + r*k3 + k4 == D - R (mod 2^n)
// for every input triple (x, y, r).
OracleCoeffs oracle_coeffs(const Circle& bob, std::size_t n);

// The linearised expression above, reduced mod 2^n. Defined for arbitrary
// n-bit field values, not just in-range circles.
RegValue linearized_d_minus_r(RegValue x, RegValue y, RegValue r,
                              const OracleCoeffs& k, std::size_t n);

}  // namespace pqci::geometry

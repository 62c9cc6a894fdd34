#include "geometry.hpp"

#include <sstream>

namespace pqci::geometry {

namespace {

using Signed = __int128;

RegValue mod_pow2(Signed v, std::size_t n) {
    RegValue mask = reg_mask(n);
    Signed m = Signed(mask) + 1;
    Signed r = v % m;
    if (r < 0) r += m;
    return RegValue(r) & mask;
}

Signed sq_diff(std::uint64_t a, std::uint64_t b) {
    Signed d = Signed(a) - Signed(b);
    return d * d;
}

}  // namespace

ProblemParams ProblemParams::for_precision(unsigned t) {
    if (t < 2) throw Error("precision t must be at least 2");
    if (t > 62) throw Error("precision t above 62 is not supported");
    ProblemParams p;
    p.t = t;
    p.n = 2 * std::size_t(t) + 3;
    p.m = 3 * p.n;
    return p;
}

Circle Circle::parse(const std::string& text) {
    std::istringstream is(text);
    Circle c;
    char c1 = 0, c2 = 0;
    if (!(is >> c.x >> c1 >> c.y >> c2 >> c.r) || c1 != ',' || c2 != ',' ||
        !(is >> std::ws).eof())
        throw Error("circle must be a decimal triple 'x,y,r': got '" + text + "'");
    return c;
}

std::string Circle::to_string() const {
    return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(r);
}

void validate_circle(const Circle& c, const ProblemParams& p) {
    std::uint64_t hi = std::uint64_t(p.grid_size()) - 1;  // T - 1
    auto check = [&](std::uint64_t v, const char* name) {
        if (v < 1 || v > hi)
            throw Error(std::string("circle ") + name + "=" + std::to_string(v) +
                        " out of range [1, " + std::to_string(hi) + "] for t=" +
                        std::to_string(p.t));
    };
    check(c.x, "x");
    check(c.y, "y");
    check(c.r, "r");
}

bool intersects(const Circle& c1, const Circle& c2) {
    Signed d = sq_diff(c1.x, c2.x) + sq_diff(c1.y, c2.y);
    Signed sum_r = Signed(c1.r) + Signed(c2.r);
    return d < sum_r * sum_r;
}

RegValue d_minus_r(const Circle& c1, const Circle& c2, std::size_t n) {
    Signed d = sq_diff(c1.x, c2.x) + sq_diff(c1.y, c2.y);
    Signed sum_r = Signed(c1.r) + Signed(c2.r);
    return mod_pow2(d - sum_r * sum_r, n);
}

OracleCoeffs oracle_coeffs(const Circle& bob, std::size_t n) {
    OracleCoeffs k;
    k.k1 = mod_pow2(-2 * Signed(bob.x), n);
    k.k2 = mod_pow2(-2 * Signed(bob.y), n);
    k.k3 = mod_pow2(-2 * Signed(bob.r), n);
    k.k4 = mod_pow2(Signed(bob.x) * Signed(bob.x) + Signed(bob.y) * Signed(bob.y) -
                        Signed(bob.r) * Signed(bob.r),
                    n);
    return k;
}

RegValue linearized_d_minus_r(RegValue x, RegValue y, RegValue r,
                              const OracleCoeffs& k, std::size_t n) {
    // 128-bit wraparound followed by masking is exact arithmetic mod 2^n.
    RegValue mask = reg_mask(n);
    RegValue neg_r_sq = (~(r * r) + 1);
    RegValue v = x * x + y * y + neg_r_sq + x * k.k1 + y * k.k2 + r * k.k3 + k.k4;
    return v & mask;
}

}  // namespace pqci::geometry

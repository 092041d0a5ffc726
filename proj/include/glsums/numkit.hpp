#pragma once

// Integer gcd/lcm helpers, harmonic numbers and the handful of analytic
// constants the asymptotic formulas need.

#include "glsums/rational.hpp"
#include "glsums/sieve.hpp"

#include <span>
#include <string_view>

namespace glsums {

u64 gcd_many(std::span<const u64> values);
BigInt lcm_many(std::span<const u64> values);

// lcm(1..n) as a big integer; the common denominator of every 1/[tuple]
// with entries <= n.
BigInt lcm_upto(u64 n);

// Denominator-growth guard for exact-mode sums over lcm(1..x).
inline constexpr u64 kExactOracleCap = 600;
// Single-variable exact evaluations (harmonic, h, F, identity-based T2) stay
// cheap much further out.
inline constexpr u64 kExactSingleCap = 10'000;

Numeric harmonic(u64 m, Mode mode, u64 exact_cap = kExactSingleCap);

struct Constants {
    double zeta2;      // pi^2/6
    double zeta3;
    double zeta4;      // pi^4/90
    double gamma;      // Euler's constant
    double zetaprime2; // zeta'(2) = -sum log n / n^2
};

// All entries good to >= 12 significant digits (Euler-Maclaurin tails).
const Constants& constants();
double constant_by_name(std::string_view name);

// Riemann zeta on the real axis, s > 1 (Euler-Maclaurin); used for the
// zeta(k+1)/zeta(k) main terms and as a cross-check of zetaprime2.
double zeta_em(double s);

} // namespace glsums

#include "glsums/numkit.hpp"

#include "glsums/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace glsums {

u64 gcd_many(std::span<const u64> values) {
    if (values.empty()) throw usage_error("gcd_many: empty list");
    u64 g = 0;
    for (u64 v : values) {
        if (v == 0) throw usage_error("gcd_many: values must be >= 1");
        g = std::gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

BigInt lcm_many(std::span<const u64> values) {
    if (values.empty()) throw usage_error("lcm_many: empty list");
    BigInt l(1);
    for (u64 v : values) {
        if (v == 0) throw usage_error("lcm_many: values must be >= 1");
        u64 m = 0;
        l.div_u64(v, &m); // m = l mod v; gcd(l, v) = gcd(v, m)
        u64 g = (m == 0) ? v : std::gcd(v, m);
        l = l.div_u64(g);
        l *= BigInt::from_u64(v);
    }
    return l;
}

BigInt lcm_upto(u64 n) {
    if (n < 1) throw usage_error("lcm_upto: n must be >= 1");
    std::vector<bool> composite(n + 1, false);
    BigInt l(1);
    u64 chunk = 1; // batch prime powers into u64 before the bigint multiply
    for (u64 p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (u64 q = p * p; q <= n; q += p) composite[q] = true;
        u64 pe = p;
        while (pe <= n / p) pe *= p;
        if (chunk > ~u64{0} / pe) {
            l *= BigInt::from_u64(chunk);
            chunk = 1;
        }
        chunk *= pe;
    }
    if (chunk > 1) l *= BigInt::from_u64(chunk);
    return l;
}

Numeric harmonic(u64 m, Mode mode, u64 exact_cap) {
    if (m < 1) throw usage_error("harmonic: m must be >= 1");
    if (mode == Mode::exact) {
        if (m > exact_cap)
            throw resource_error("harmonic: exact mode capped at m = " +
                                 std::to_string(exact_cap) +
                                 " (denominator ~ e^m)");
        BigInt den = lcm_upto(m);
        BigInt num(0);
        for (u64 j = 1; j <= m; ++j) num += den.div_u64(j);
        return Numeric::exact(Rational(std::move(num), std::move(den)));
    }
    NeumaierSum acc;
    for (u64 j = m; j >= 1; --j) acc.add(1.0 / static_cast<double>(j));
    return Numeric::floating(acc.value());
}

namespace {

// Euler-Maclaurin tail for sum_{n>=N} f(n) given f, f', f''' at N and the
// integral from N to infinity.
double zeta_tail(double s, double N) {
    // f(t) = t^-s
    double integral = std::pow(N, 1.0 - s) / (s - 1.0);
    double f = std::pow(N, -s);
    double fp = -s * std::pow(N, -s - 1.0);
    double fppp = -s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0);
    return integral + f / 2.0 - fp / 12.0 + fppp / 720.0;
}

double compute_zeta(double s) {
    const u64 N = 100'000;
    NeumaierSum acc;
    for (u64 n = N - 1; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -s));
    return acc.value() + zeta_tail(s, static_cast<double>(N));
}

double compute_gamma() {
    // H_N - log N - 1/(2N) + 1/(12N^2) - 1/(120N^4) + 1/(252N^6)
    const u64 N = 100'000;
    NeumaierSum acc;
    for (u64 n = N; n >= 1; --n) acc.add(1.0 / static_cast<double>(n));
    double Nd = static_cast<double>(N);
    return acc.value() - std::log(Nd) - 1.0 / (2 * Nd) + 1.0 / (12 * Nd * Nd) -
           1.0 / (120 * Nd * Nd * Nd * Nd);
}

double compute_zetaprime2() {
    // zeta'(2) = -sum_{n>=2} log n / n^2, tail by Euler-Maclaurin with
    // f = log t / t^2: int = (log N + 1)/N, f' = (1-2log t)/t^3,
    // f''' = (26 - 24 log t)/t^5.
    const u64 N = 100'000;
    NeumaierSum acc;
    for (u64 n = N - 1; n >= 2; --n) {
        double t = static_cast<double>(n);
        acc.add(std::log(t) / (t * t));
    }
    double Nd = static_cast<double>(N), lg = std::log(Nd);
    double tail = (lg + 1.0) / Nd + lg / (2 * Nd * Nd) -
                  (1.0 - 2.0 * lg) / (12 * Nd * Nd * Nd) +
                  (26.0 - 24.0 * lg) / (720 * Nd * Nd * Nd * Nd * Nd);
    return -(acc.value() + tail);
}

} // namespace

const Constants& constants() {
    static const Constants c = [] {
        Constants k;
        k.zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
        k.zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
        k.zeta3 = compute_zeta(3.0);
        k.gamma = compute_gamma();
        k.zetaprime2 = compute_zetaprime2();
        return k;
    }();
    return c;
}

double constant_by_name(std::string_view name) {
    const Constants& c = constants();
    if (name == "zeta2") return c.zeta2;
    if (name == "zeta3") return c.zeta3;
    if (name == "zeta4") return c.zeta4;
    if (name == "gamma") return c.gamma;
    if (name == "zetaprime2") return c.zetaprime2;
    throw usage_error("unknown constant: " + std::string(name));
}

double zeta_em(double s) {
    if (s <= 1.0) throw usage_error("zeta_em: requires s > 1");
    return compute_zeta(s);
}

} // namespace glsums

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion tolerances are pinned in code, not configurable.

#include "glsums/asym.hpp"
#include "glsums/errors.hpp"
#include "glsums/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

using namespace glsums;

namespace {

int g_failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double elapsed_s) {
    std::printf("[%s] criterion %2d: %-28s %s  (%.1fs)\n", pass ? "PASS" : "FAIL",
                id, name.c_str(), detail.c_str(), elapsed_s);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int id, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& body) {
    double t0 = now_s();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    report(id, name, pass, detail, now_s() - t0);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

int main() {
    std::printf("glsums acceptance suite\n");

    // 1. fast_S2 vs oracle: exact rationals x <= 300, float 1e-9 at larger x
    run(1, "oracle/fast S2 equivalence", [] {
        double t0 = now_s();
        for (u64 x = 1; x <= 300; ++x) {
            Rational fast = fast_S2(x, Mode::exact).value.rational();
            Rational oracle =
                oracle_tuple_sum(SumKind::S, 2, x, Mode::exact).value.rational();
            if (fast != oracle)
                return std::make_pair(false, "exact mismatch at x = " + std::to_string(x));
        }
        for (u64 x : {500, 1000, 2000}) {
            double fast = fast_S2(x, Mode::floating).value.to_double();
            double oracle =
                oracle_tuple_sum(SumKind::S, 2, x, Mode::floating).value.to_double();
            if (std::abs(fast - oracle) > 1e-9 * std::abs(oracle))
                return std::make_pair(false, "float mismatch at x = " + std::to_string(x));
        }
        double el = now_s() - t0;
        return std::make_pair(el < 60.0, "exact x<=300, float {500,1000,2000}" +
                                             std::string(el < 60 ? "" : "; over 60s"));
    });

    // 2. convolution identities exhaustively to 1e4
    run(2, "a_k/b_k identities n<=1e4", [] {
        double t0 = now_s();
        SieveTables sv = build_sieve(10'000);
        for (int k = 2; k <= 4; ++k) {
            FunctionTable ak = table_from_spec(MultiplicativeSpec::a_k(k), 10'000, sv);
            FunctionTable bk = table_from_spec(MultiplicativeSpec::b_k(k), 10'000, sv);
            FunctionTable tk = table_from_spec(MultiplicativeSpec::tau_pow(k), 10'000, sv);
            // sum_{d|n} a_k(d) = tau(n)^k by direct divisor accumulation
            std::vector<i64> divsum(10'001, 0);
            for (u64 d = 1; d <= 10'000; ++d)
                for (u64 n = d; n <= 10'000; n += d) divsum[n] += ak.values[d];
            for (u64 n = 1; n <= 10'000; ++n)
                if (divsum[n] != tk.values[n])
                    return std::make_pair(false, "sum_{d|n} a_k != tau^k at n = " +
                                                     std::to_string(n));
            FunctionTable bk2 = mobius_invert(ak, sv);
            for (u64 n = 1; n <= 10'000; ++n)
                if (bk2.values[n] != bk.values[n])
                    return std::make_pair(false, "mu*a_k != b_k at n = " + std::to_string(n));
            for (u64 p : sv.primes()) {
                if (ak.values[p] != (1LL << k) - 1)
                    return std::make_pair(false, "a_k(p) != 2^k-1 at p = " + std::to_string(p));
                if (bk.values[p] != (1LL << k) - 2)
                    return std::make_pair(false, "b_k(p) != 2^k-2 at p = " + std::to_string(p));
            }
        }
        double el = now_s() - t0;
        return std::make_pair(el < 30.0, std::string("k in {2,3,4}, all primes <= 1e4"));
    });

    // 3. tuple-count semantics against brute-force enumeration
    run(3, "a_k/b_k tuple counts n<=60", [] {
        SieveTables sv = build_sieve(60);
        for (int k : {2, 3}) {
            FunctionTable ak = table_from_spec(MultiplicativeSpec::a_k(k), 60, sv);
            FunctionTable bk = table_from_spec(MultiplicativeSpec::b_k(k), 60, sv);
            for (u64 n = 1; n <= 60; ++n) {
                std::vector<u64> divs;
                for (u64 d = 1; d <= n; ++d)
                    if (n % d == 0) divs.push_back(d);
                u64 ca = 0, cb = 0;
                std::vector<std::size_t> idx(k, 0);
                while (true) {
                    u64 l = 1, g = 0;
                    for (int i = 0; i < k; ++i) {
                        l = std::lcm(l, divs[idx[i]]);
                        g = std::gcd(g, divs[idx[i]]);
                    }
                    if (l == n) {
                        ++ca;
                        if (g == 1) ++cb;
                    }
                    int pos = k - 1;
                    while (pos >= 0 && ++idx[pos] == divs.size()) idx[pos--] = 0;
                    if (pos < 0) break;
                }
                if (ak.values[n] != static_cast<i64>(ca) ||
                    bk.values[n] != static_cast<i64>(cb))
                    return std::make_pair(false, "count mismatch at n = " + std::to_string(n));
            }
        }
        return std::make_pair(true, std::string("k in {2,3}"));
    });

    // 4. T2 near 3x with calibrated (log x)^2 envelope
    run(4, "T2 vs 3x (Jordan identity)", [] {
        double t0 = now_s();
        SieveTables sv = build_sieve(10'000);
        auto t2_exact = [&](u64 x) {
            return fast_T2(x, Mode::exact, sv).value.rational();
        };
        auto dev = [&](u64 x) {
            Rational d = t2_exact(x) - Rational(BigInt::from_u64(3 * x), BigInt(1));
            return std::abs(d.to_double());
        };
        double r100 = dev(100) / std::pow(std::log(100.0), 2);
        double c = 2.0 * r100;
        for (u64 x : {1000, 10'000}) {
            double r = dev(x) / std::pow(std::log(static_cast<double>(x)), 2);
            if (r > c)
                return std::make_pair(false, "|T2-3x|/(log x)^2 = " + fmt(r) +
                                                 " above C = " + fmt(c) + " at x = " +
                                                 std::to_string(x));
        }
        Rational t2e = t2_exact(10'000);
        double reldev = std::abs(t2e.to_double() / 1e4 - 3.0);
        if (reldev > 0.02)
            return std::make_pair(false, "|T2(1e4)/1e4 - 3| = " + fmt(reldev));
        // parallel float oracle cross-check (1e8 pairs via gcd)
        double oracle =
            oracle_tuple_sum(SumKind::T, 2, 10'000, Mode::floating, 4).value.to_double();
        if (std::abs(oracle - t2e.to_double()) > 1e-9 * oracle)
            return std::make_pair(false, std::string("float oracle disagrees with exact T2(1e4)"));
        double el = now_s() - t0;
        return std::make_pair(el < 300.0, "C = " + fmt(c) + ", |T2(1e4)/1e4 - 3| = " +
                                              fmt(reldev));
    });

    // 5. beta_2 window at N = 2000
    run(5, "beta_2 = 3 within tail", [] {
        double t0 = now_s();
        BetaResult b = beta_k(2, 2000);
        bool pass = b.value >= 2.99 && b.value <= 3.0 + b.tail_estimate &&
                    b.tail_estimate <= 0.01 && (now_s() - t0) < 30.0;
        return std::make_pair(pass, "beta_2(2000) = " + fmt(b.value) + ", tail = " +
                                        fmt(b.tail_estimate));
    });

    // 6. Euler's sum: absolute error at 1e4 and the 1e3 -> 1e4 decrease factor
    run(6, "Euler sum H_n/n^2 -> 2 zeta(3)", [] {
        EulerSumResult e3 = euler_sum_check(1000);
        EulerSumResult e4 = euler_sum_check(10'000);
        double err3 = std::abs(e3.error_vs_2zeta3);
        double err4 = std::abs(e4.error_vs_2zeta3);
        bool abs_ok = err4 <= 2e-3;
        double ratio = err3 / err4;
        bool ratio_ok = ratio >= 8.0;
        std::string detail = "err(1e4) = " + fmt(err4) + ", decrease factor = " +
                             fmt(ratio) + (ratio_ok ? "" : " (< 8)");
        return std::make_pair(abs_ok && ratio_ok, detail);
    });

    // 7. sandwich bounds, exact, k = 3
    run(7, "sandwich bounds k=3", [] {
        double t0 = now_s();
        for (u64 x : {20, 50, 100, 200}) {
            for (SumKind kind : {SumKind::S, SumKind::U}) {
                SandwichReport rep = sandwich_check(kind, 3, x);
                if (!rep.pass)
                    return std::make_pair(false, sum_kind_name(kind) +
                                                     " fails at x = " + std::to_string(x));
            }
        }
        double el = now_s() - t0;
        return std::make_pair(el < 300.0, std::string("S and U at x in {20,50,100,200}"));
    });

    // 8. relation identities, exact rationals
    run(8, "S/U/T relations k in {2,3}", [] {
        for (int k : {2, 3})
            for (u64 x = 1; x <= 30; ++x)
                for (Relation rel : {Relation::S_from_U, Relation::U_from_S,
                                     Relation::T_from_U, Relation::U_from_T}) {
                    RelationReport rep = relation_check(rel, k, x);
                    if (!rep.pass)
                        return std::make_pair(false, relation_name(rel) + " fails at k = " +
                                                         std::to_string(k) + ", x = " +
                                                         std::to_string(x));
                }
        return std::make_pair(true, std::string("all four, x in 1..30"));
    });

    // 9. V bounds, exact
    run(9, "V bounds k=3", [] {
        for (u64 x : {20, 50, 100}) {
            Rational v = oracle_tuple_sum(SumKind::V, 3, x, Mode::exact).value.rational();
            Rational u = oracle_tuple_sum(SumKind::U, 3, x, Mode::exact).value.rational();
            u64 xk = x * x * x;
            Rational lower = Rational::from_integer(BigInt::from_u64(xk));
            Rational upper = Rational(BigInt::from_u64(xk), BigInt(1)) * u;
            if (!(lower <= v && v <= upper))
                return std::make_pair(false, "bound fails at x = " + std::to_string(x));
        }
        return std::make_pair(true, std::string("x^3 <= V_3 <= x^3 U_3"));
    });

    // 10. leading coefficients by fit
    run(10, "fit leading coefficients", [] {
        double t0 = now_s();
        const double pi2 = std::numbers::pi * std::numbers::pi;
        S2Prefix pre(1'000'000);
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 12; ++i) {
            u64 xi = static_cast<u64>(1e4 * std::pow(100.0, i / 11.0) + 0.5);
            pts.push_back({static_cast<double>(xi), pre.s2(xi)});
        }
        FitReport s2fit = fit_log_polynomial(pts, 3);
        double s2_target = 2.0 / pi2;
        double s2_rel = std::abs(s2fit.leading - s2_target) / s2_target;
        if (s2_rel > 0.10)
            return std::make_pair(false, "S2 c3 = " + fmt(s2fit.leading) + " off by " +
                                             fmt(s2_rel));
        S2Prefix preu(200'000);
        SieveTables sv = build_sieve(200'000);
        std::vector<std::pair<double, double>> ptsu;
        for (int i = 0; i < 12; ++i) {
            u64 xi = static_cast<u64>(1e3 * std::pow(200.0, i / 11.0) + 0.5);
            ptsu.push_back({static_cast<double>(xi), u2_from_s2(preu, xi, sv)});
        }
        FitReport u2fit = fit_log_polynomial(ptsu, 2);
        double u2_target = 6.0 / pi2;
        double u2_rel = std::abs(u2fit.leading - u2_target) / u2_target;
        if (u2_rel > 0.15)
            return std::make_pair(false, "U2 c2 = " + fmt(u2fit.leading) + " off by " +
                                             fmt(u2_rel));
        double el = now_s() - t0;
        return std::make_pair(el < 180.0, "S2 c3 off " + fmt(s2_rel) + ", U2 c2 off " +
                                              fmt(u2_rel));
    });

    // 11. classical main terms at desk scale
    run(11, "classical main terms", [] {
        SieveTables sv = build_sieve(100'000);
        double got1 = pair_sum_from_triangular(SingleFn::Ginv, 100'000, Mode::floating, sv)
                          .value.to_double();
        double want1 = main_term({MainFormula::gcd_recipr_m_n, 2, {}}, 1e5);
        if (std::abs(got1 - want1) > 0.005 * want1)
            return std::make_pair(false, std::string("sum 1/(m,n) off at x = 1e5"));
        double got2 = pair_sum_from_triangular(SingleFn::L, 100'000, Mode::floating, sv)
                          .value.to_double();
        double want2 = main_term({MainFormula::lcm_m_n, 2, {}}, 1e5);
        if (std::abs(got2 - want2) > 0.01 * want2)
            return std::make_pair(false, std::string("sum [m,n] off at x = 1e5"));
        SieveTables sv3 = build_sieve(500);
        double got3 = gcd_reciprocal_sum(3, 500, Mode::floating, sv3).value.to_double();
        double want3 = main_term({MainFormula::gcd_recipr_k, 3, {}}, 500.0);
        if (std::abs(got3 - want3) > 0.01 * want3)
            return std::make_pair(false, std::string("sum 1/(n1,n2,n3) off at x = 500"));
        return std::make_pair(true, "rel errs: " + fmt(std::abs(got1 - want1) / want1) +
                                        ", " + fmt(std::abs(got2 - want2) / want2) +
                                        ", " + fmt(std::abs(got3 - want3) / want3));
    });

    // 12. engineering performance targets
    run(12, "performance targets", [] {
        double t0 = now_s();
        (void)fast_S2(1'000'000, Mode::floating);
        double t_s2 = now_s() - t0;
        if (t_s2 >= 5.0)
            return std::make_pair(false, "fast_S2(1e6) took " + fmt(t_s2) + "s");
        t0 = now_s();
        (void)oracle_tuple_sum(SumKind::T, 3, 300, Mode::floating, 4);
        double t_t3 = now_s() - t0;
        if (t_t3 >= 10.0)
            return std::make_pair(false, "oracle T3(300) took " + fmt(t_t3) + "s");
        t0 = now_s();
        (void)build_sieve(10'000'000);
        double t_sv = now_s() - t0;
        if (t_sv >= 2.0)
            return std::make_pair(false, "build_sieve(1e7) took " + fmt(t_sv) + "s");
        return std::make_pair(true, "S2(1e6) " + fmt(t_s2) + "s, T3(300) " + fmt(t_t3) +
                                        "s, sieve(1e7) " + fmt(t_sv) + "s");
    });

    std::printf("%d criterion(s) failing\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}

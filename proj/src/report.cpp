#include "glsums/report.hpp"

#include "glsums/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace glsums {

using nlohmann::json;

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::oracle: return "oracle";
        case Algo::fast: return "fast";
        case Algo::auto_: return "auto";
    }
    return "?";
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string sum_result_to_json(const SumResult& r) {
    json j;
    j["kind"] = sum_kind_name(r.request.kind);
    j["k"] = r.request.k;
    j["x"] = r.request.x;
    j["mode"] = mode_name(r.request.mode);
    j["algorithm"] = r.algorithm_used;
    if (r.value.is_exact()) {
        // rationals stay rationals on the wire, "num/den" even when den = 1
        j["value"] = r.value.rational().num().to_string() + "/" +
                     r.value.rational().den().to_string();
        j["value_num"] = r.value.rational().num().to_string();
        j["value_den"] = r.value.rational().den().to_string();
    } else {
        j["value"] = r.value.to_string();
    }
    j["elapsed_ms"] = r.elapsed_ms;
    j["term_count"] = r.term_count;
    return j.dump(2);
}

std::string sum_result_to_csv(const SumResult& r) {
    std::ostringstream out;
    out << "kind,k,x,mode,algorithm,value,elapsed_ms\n";
    out << sum_kind_name(r.request.kind) << ',' << r.request.k << ','
        << r.request.x << ',' << mode_name(r.request.mode) << ','
        << r.algorithm_used << ',' << r.value.to_string() << ','
        << r.elapsed_ms << '\n';
    return out.str();
}

std::string sum_result_to_text(const SumResult& r) {
    std::ostringstream out;
    out << sum_kind_name(r.request.kind);
    if (r.request.kind == SumKind::S || r.request.kind == SumKind::T ||
        r.request.kind == SumKind::U || r.request.kind == SumKind::V ||
        r.request.kind == SumKind::gcd_power ||
        r.request.kind == SumKind::gcd_reciprocal)
        out << "_" << r.request.k;
    out << "(" << r.request.x << ") = " << r.value.to_string();
    if (r.value.is_exact() && !r.value.rational().is_integer())
        out << "  (~" << fmt17(r.value.to_double()) << ")";
    out << "\n  algorithm: " << r.algorithm_used << ", mode: "
        << mode_name(r.request.mode) << ", terms: " << r.term_count
        << ", elapsed: " << r.elapsed_ms << " ms\n";
    return out.str();
}

std::string fit_report_to_json(const FitReport& r) {
    json j;
    j["degree"] = r.degree;
    json coefs = json::array();
    for (double c : r.coefficients) coefs.push_back(fmt17(c));
    j["coefficients"] = coefs;
    j["leading"] = fmt17(r.leading);
    j["condition"] = r.condition;
    json res = json::array();
    for (double c : r.residuals) res.push_back(fmt17(c));
    j["residuals"] = res;
    return j.dump(2);
}

std::string fit_report_to_text(const FitReport& r) {
    std::ostringstream out;
    out << "fit degree " << r.degree << " in t = log x\n";
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        out << "  c" << i << " = " << fmt17(r.coefficients[i]) << "\n";
    out << "  leading = " << fmt17(r.leading) << "\n";
    out << "  condition = " << r.condition << "\n  residuals:";
    for (double c : r.residuals) out << ' ' << fmt17(c);
    out << '\n';
    return out.str();
}

std::string verify_result_to_json(const VerifySuiteResult& r) {
    json j;
    j["suite"] = r.suite;
    j["overall"] = r.overall() ? "pass" : "fail";
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e;
        e["id"] = c.id;
        e["pass"] = c.pass;
        e["lhs"] = c.lhs;
        e["rhs"] = c.rhs;
        e["tolerance"] = c.tolerance;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2);
}

std::string verify_result_to_text(const VerifySuiteResult& r) {
    std::ostringstream out;
    out << "suite " << r.suite << "\n";
    for (const auto& c : r.checks) {
        out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.id;
        if (!c.pass || !c.lhs.empty())
            out << "  lhs=" << c.lhs << " rhs=" << c.rhs << " tol=" << c.tolerance;
        out << "\n";
    }
    out << (r.overall() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// verification suites

namespace {

void add(VerifySuiteResult& out, std::string id, bool pass, std::string lhs,
         std::string rhs, std::string tol = "0") {
    out.checks.push_back({std::move(id), pass, std::move(lhs), std::move(rhs),
                          std::move(tol)});
}

void suite_identities(VerifySuiteResult& out, u64 x) {
    if (x == 0) x = 10'000;
    SieveTables sv = build_sieve(std::max<u64>(x, 1000));

    // Mobius-pair sanity over the sieve tables
    {
        u64 bad = 0;
        std::string first;
        std::vector<u64> phisum(x + 1, 0), j2sum(x + 1, 0);
        std::vector<i64> musum(x + 1, 0);
        for (u64 d = 1; d <= x; ++d)
            for (u64 n = d; n <= x; n += d) {
                phisum[n] += sv.phi(d);
                musum[n] += sv.mobius(d);
                j2sum[n] += sv.jordan2(d);
            }
        for (u64 n = 1; n <= x && bad == 0; ++n) {
            if (phisum[n] != n || j2sum[n] != n * n ||
                musum[n] != (n == 1 ? 1 : 0)) {
                ++bad;
                first = "n=" + std::to_string(n);
            }
        }
        add(out, "sieve.divisor_sums(n<=" + std::to_string(x) + ")", bad == 0,
            bad == 0 ? "all" : first, "phi*1=id, mu*1=e, j2*1=n^2");
    }
    // (1*1) = tau on n <= 100
    {
        FunctionTable one = table_from_spec(MultiplicativeSpec::one(), 100, sv);
        FunctionTable tau2 = dirichlet_convolve(one, one);
        bool ok = true;
        std::string first;
        for (u64 n = 1; n <= 100 && ok; ++n)
            if (tau2.values[n] != static_cast<i64>(sv.tau(n))) {
                ok = false;
                first = "n=" + std::to_string(n);
            }
        add(out, "conv.one_one_equals_tau", ok, ok ? "all n<=100" : first, "tau");
    }
    // sum_{d|n} a_k(d) = tau(n)^k and b_k = mu*a_k, n <= x, k in {2,3,4}
    for (int k = 2; k <= 4; ++k) {
        FunctionTable ak = table_from_spec(MultiplicativeSpec::a_k(k), x, sv);
        FunctionTable bk = table_from_spec(MultiplicativeSpec::b_k(k), x, sv);
        FunctionTable tk = table_from_spec(MultiplicativeSpec::tau_pow(k), x, sv);
        FunctionTable ak_inv = mobius_invert(tk, sv); // should equal a_k
        FunctionTable bk_inv = mobius_invert(ak, sv); // should equal b_k
        u64 bad = 0;
        std::string first;
        for (u64 n = 1; n <= x; ++n) {
            if (ak_inv.values[n] != ak.values[n] ||
                bk_inv.values[n] != bk.values[n] || bk.values[n] < 0) {
                if (bad++ == 0) first = "n=" + std::to_string(n);
            }
        }
        add(out, "multfun.ak_bk_mobius[k=" + std::to_string(k) + "]", bad == 0,
            bad == 0 ? "all n<=" + std::to_string(x) : first,
            "a_k=mu*tau^k, b_k=mu*a_k, b_k>=0");
        // prime values
        bool pok = true;
        std::string pfirst;
        for (u64 p : sv.primes()) {
            if (p > x) break;
            if (ak.values[p] != (1LL << k) - 1 || bk.values[p] != (1LL << k) - 2) {
                pok = false;
                pfirst = "p=" + std::to_string(p);
                break;
            }
        }
        add(out, "multfun.prime_values[k=" + std::to_string(k) + "]", pok,
            pok ? "all p<=" + std::to_string(x) : pfirst, "2^k-1 / 2^k-2");
    }
    // single-variable identity cross-checks (throws internal_error on mismatch)
    {
        bool ok = true;
        std::string what = "all n<=200";
        try {
            for (u64 n = 1; n <= 200; ++n) {
                (void)single_fn(SingleFn::G, n, Mode::exact);
                (void)single_fn(SingleFn::Ginv, n, Mode::exact);
                (void)single_fn(SingleFn::L, n, Mode::exact);
                (void)single_fn(SingleFn::Linv, n, Mode::exact);
                (void)single_fn(SingleFn::F, n, Mode::exact);
            }
        } catch (const internal_error& e) {
            ok = false;
            what = e.what();
        }
        add(out, "single_fn.definition_vs_identity(n<=200)", ok, what, "equal");
    }
    // h(n): coprime-reciprocal definition vs divisor identity, n <= 100
    {
        bool ok = true;
        std::string first = "all n<=100";
        for (u64 n = 1; n <= 100 && ok; ++n) {
            Rational def = h_single(n, Mode::exact).rational();
            Rational id(0);
            for (u64 d = 1; d <= n; ++d) {
                if (n % d || sv.mobius(d) == 0) continue;
                id += Rational(BigInt(sv.mobius(d)), BigInt::from_u64(d)) *
                      harmonic(n / d, Mode::exact).rational();
            }
            if (def != id) {
                ok = false;
                first = "n=" + std::to_string(n) + ": " + def.to_string() +
                        " vs " + id.to_string();
            }
        }
        add(out, "h.mu_harmonic_identity(n<=100)", ok, first, "equal");
    }
}

void suite_sandwich(VerifySuiteResult& out, int k, u64 x) {
    if (k == 0) k = 3;
    std::vector<u64> grid = x ? std::vector<u64>{x}
                              : std::vector<u64>{20, 50, 100, 200};
    for (u64 xv : grid) {
        for (SumKind kind : {SumKind::S, SumKind::U}) {
            SandwichReport rep = sandwich_check(kind, k, xv);
            add(out,
                "sandwich." + sum_kind_name(kind) + "[k=" + std::to_string(k) +
                    ",x=" + std::to_string(xv) + "]",
                rep.pass,
                rep.lower.to_string() + " <= " + rep.value.to_string(),
                rep.value.to_string() + " <= " + fmt17(rep.upper));
        }
    }
}

void suite_relations(VerifySuiteResult& out, int k, u64 x) {
    std::vector<int> ks = k ? std::vector<int>{k} : std::vector<int>{2, 3};
    u64 xmax = x ? x : 30;
    for (int kk : ks)
        for (Relation rel : {Relation::S_from_U, Relation::U_from_S,
                             Relation::T_from_U, Relation::U_from_T}) {
            bool ok = true;
            std::string detail = "x=1.." + std::to_string(xmax);
            for (u64 xv = 1; xv <= xmax; ++xv) {
                RelationReport rep = relation_check(rel, kk, xv);
                if (!rep.pass) {
                    ok = false;
                    detail = "x=" + std::to_string(xv) + ": " +
                             rep.lhs.to_string() + " != " + rep.rhs.to_string();
                    break;
                }
            }
            add(out,
                "relation." + relation_name(rel) + "[k=" + std::to_string(kk) + "]",
                ok, detail, "exact");
        }
}

void suite_bounds(VerifySuiteResult& out, int k, u64 x) {
    if (k == 0) k = 3;
    std::vector<u64> grid = x ? std::vector<u64>{x} : std::vector<u64>{20, 50, 100};
    for (u64 xv : grid) {
        Rational v = oracle_tuple_sum(SumKind::V, k, xv, Mode::exact).value.rational();
        Rational u = oracle_tuple_sum(SumKind::U, k, xv, Mode::exact).value.rational();
        bool ovf = false;
        u64 xk = 1;
        {
            u128 r = 1;
            for (int i = 0; i < k; ++i) r *= xv;
            if (r > ~u64{0}) ovf = true;
            else xk = static_cast<u64>(r);
        }
        if (ovf) throw resource_error("bounds: x^k overflow");
        Rational lowerb = Rational::from_integer(BigInt::from_u64(xk));
        Rational upperb = Rational(BigInt::from_u64(xk), BigInt(1)) * u;
        bool pass = lowerb <= v && v <= upperb;
        add(out, "bounds.V[k=" + std::to_string(k) + ",x=" + std::to_string(xv) + "]",
            pass, "x^k=" + lowerb.to_string() + " <= V=" + v.to_string(),
            "V <= x^k*U=" + upperb.to_string());
    }
    // termwise chains U <= S, U <= T at modest scales
    for (int kk : {2, 3}) {
        for (u64 xv : {5, 10, 20}) {
            Rational s = oracle_tuple_sum(SumKind::S, kk, xv, Mode::exact).value.rational();
            Rational t = oracle_tuple_sum(SumKind::T, kk, xv, Mode::exact).value.rational();
            Rational u = oracle_tuple_sum(SumKind::U, kk, xv, Mode::exact).value.rational();
            add(out,
                "bounds.U_le_S_and_T[k=" + std::to_string(kk) + ",x=" +
                    std::to_string(xv) + "]",
                u <= s && u <= t, "U=" + u.to_string(),
                "S=" + s.to_string() + ", T=" + t.to_string());
        }
    }
    // Walfisz-order probe on the totient summatory remainder
    {
        SieveTables sv = build_sieve(1'000'000);
        i128 acc = 0;
        double cal = -1;
        bool ok = true;
        std::string detail;
        u64 marks[4] = {1'000, 10'000, 100'000, 1'000'000};
        std::size_t mi = 0;
        for (u64 n = 1; n <= 1'000'000; ++n) {
            acc += sv.phi(n);
            if (mi < 4 && n == marks[mi]) {
                double xx = static_cast<double>(n);
                double R = static_cast<double>(acc) - xx * xx / (2 * constants().zeta2);
                double env = xx * std::pow(std::log(xx), 2.0 / 3.0) *
                             std::pow(std::log(std::log(xx)), 1.0 / 3.0);
                if (cal < 0) {
                    cal = std::abs(R) / env;
                    ok = cal <= 10.0;
                    detail = "c(10^3)=" + fmt17(cal);
                } else if (std::abs(R) > cal * env) {
                    ok = false;
                    detail += " violated at x=" + std::to_string(n);
                }
                ++mi;
            }
        }
        add(out, "bounds.walfisz_probe", ok, detail, "|R| <= c*x log^{2/3} loglog^{1/3}",
            "order check");
    }
}

void suite_asymptotics(VerifySuiteResult& out) {
    // beta_2 near 3
    {
        BetaResult b = beta_k(2, 2000);
        bool pass = b.value >= 2.99 && b.value <= 3.0 + b.tail_estimate &&
                    b.tail_estimate <= 0.01;
        add(out, "asym.beta2[N=2000]", pass, fmt17(b.value),
            "[2.99, 3 + " + fmt17(b.tail_estimate) + "]", "tail<=0.01");
    }
    // Euler's sum at N = 10^4
    {
        EulerSumResult e = euler_sum_check(10'000);
        add(out, "asym.euler_sum[N=1e4]", std::abs(e.error_vs_2zeta3) <= 2e-3,
            fmt17(e.value), fmt17(2 * constants().zeta3), "2e-3");
    }
    // T2 convergence ratio grid
    {
        SieveTables sv = build_sieve(400);
        auto ratio = [&](u64 xv) {
            double t2 = fast_T2(xv, Mode::floating, sv).value.to_double();
            double lg = std::log(static_cast<double>(xv));
            return std::abs(t2 - 3.0 * xv) / (lg * lg);
        };
        double r50 = ratio(50);
        bool ok = true;
        std::string detail = "r50=" + fmt17(r50);
        for (u64 xv : {100, 200, 400}) {
            double r = ratio(xv);
            detail += " r" + std::to_string(xv) + "=" + fmt17(r);
            if (r > 2 * r50) ok = false;
        }
        add(out, "asym.T2_convergence", ok, detail, "<= 2*r(50)", "calibrated");
    }
    // classical main terms at desk scale
    {
        SieveTables sv = build_sieve(100'000);
        double got = pair_sum_from_triangular(SingleFn::Ginv, 100'000,
                                              Mode::floating, sv)
                         .value.to_double();
        double want = main_term({MainFormula::gcd_recipr_m_n, 2, {}}, 1e5);
        add(out, "asym.main_gcd_recipr_m_n[x=1e5]",
            std::abs(got - want) <= 0.005 * want, fmt17(got), fmt17(want), "0.5%");
        double gotl = pair_sum_from_triangular(SingleFn::L, 100'000,
                                               Mode::floating, sv)
                          .value.to_double();
        double wantl = main_term({MainFormula::lcm_m_n, 2, {}}, 1e5);
        add(out, "asym.main_lcm_m_n[x=1e5]",
            std::abs(gotl - wantl) <= 0.01 * wantl, fmt17(gotl), fmt17(wantl), "1%");
        SieveTables sv3 = build_sieve(500);
        double got3 = gcd_reciprocal_sum(3, 500, Mode::floating, sv3).value.to_double();
        double want3 = main_term({MainFormula::gcd_recipr_k, 3, {}}, 500);
        add(out, "asym.main_gcd_recipr_k[k=3,x=500]",
            std::abs(got3 - want3) <= 0.01 * want3, fmt17(got3), fmt17(want3), "1%");
    }
    // leading-coefficient recovery by fit
    {
        S2Prefix pre(1'000'000);
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 12; ++i) {
            double xx = 1e4 * std::pow(100.0, i / 11.0);
            u64 xi = static_cast<u64>(xx + 0.5);
            pts.push_back({static_cast<double>(xi), pre.s2(xi)});
        }
        FitReport fit = fit_log_polynomial(pts, 3);
        double target = 2.0 / (std::numbers::pi * std::numbers::pi);
        add(out, "asym.fit_S2_leading",
            std::abs(fit.leading - target) <= 0.10 * target, fmt17(fit.leading),
            fmt17(target), "10%");
    }
    {
        S2Prefix pre(200'000);
        SieveTables sv = build_sieve(200'000);
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 12; ++i) {
            double xx = 1e3 * std::pow(200.0, i / 11.0);
            u64 xi = static_cast<u64>(xx + 0.5);
            pts.push_back({static_cast<double>(xi), u2_from_s2(pre, xi, sv)});
        }
        FitReport fit = fit_log_polynomial(pts, 2);
        double target = 6.0 / (std::numbers::pi * std::numbers::pi);
        add(out, "asym.fit_U2_leading",
            std::abs(fit.leading - target) <= 0.15 * target, fmt17(fit.leading),
            fmt17(target), "15%");
    }
    // C_f self-convergence between prime limits 10^5 and 10^6
    {
        struct Case { MultiplicativeSpec spec; int K; const char* name; };
        std::vector<Case> cases;
        cases.push_back({MultiplicativeSpec::a_k(2), 3, "a2"});
        cases.push_back({MultiplicativeSpec::a_k(3), 7, "a3"});
        cases.push_back({MultiplicativeSpec::b_k(2), 2, "b2"});
        cases.push_back({MultiplicativeSpec::b_k(3), 6, "b3"});
        for (auto& c : cases) {
            EulerProductResult lo = euler_product_Cf(c.spec, c.K, 100'000);
            EulerProductResult hi = euler_product_Cf(c.spec, c.K, 1'000'000);
            double diff = std::abs(lo.value - hi.value) / hi.value;
            add(out, std::string("asym.Cf_self_convergence[") + c.name + "]",
                diff <= lo.tail_estimate, fmt17(diff), fmt17(lo.tail_estimate),
                "tail");
        }
    }
}

} // namespace

VerifySuiteResult run_verify_suite(const std::string& suite, int k, u64 x) {
    VerifySuiteResult out;
    out.suite = suite;
    if (suite == "identities") suite_identities(out, x);
    else if (suite == "sandwich") suite_sandwich(out, k, x);
    else if (suite == "relations") suite_relations(out, k, x);
    else if (suite == "bounds") suite_bounds(out, k, x);
    else if (suite == "asymptotics") suite_asymptotics(out);
    else if (suite == "all") {
        suite_identities(out, x);
        suite_sandwich(out, 0, 0);
        suite_relations(out, 0, 0);
        suite_bounds(out, 0, 0);
        suite_asymptotics(out);
    } else {
        throw usage_error("unknown verify suite: " + suite);
    }
    return out;
}

} // namespace glsums

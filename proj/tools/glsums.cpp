// glsums: gcd/lcm tuple sums, constants, verification suites and log-poly fits.

#include "glsums/asym.hpp"
#include "glsums/errors.hpp"
#include "glsums/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>

using namespace glsums;
using nlohmann::json;

namespace {

void emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw resource_error("cannot open output file " + output_path);
    out << payload;
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "float") return Mode::floating;
    throw usage_error("mode must be exact or float");
}

Algo parse_algo(const std::string& s) {
    if (s == "oracle") return Algo::oracle;
    if (s == "fast") return Algo::fast;
    if (s == "auto") return Algo::auto_;
    throw usage_error("algorithm must be oracle, fast or auto");
}

// "ak:3" / "bk:2" -> (spec, K = value at primes)
std::pair<MultiplicativeSpec, int> parse_fspec(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw usage_error("--spec expects ak:K or bk:K");
    int k = std::stoi(s.substr(colon + 1));
    if (k < 2 || k > 10) throw usage_error("--spec k must be in [2,10]");
    std::string head = s.substr(0, colon);
    if (head == "ak") return {MultiplicativeSpec::a_k(k), (1 << k) - 1};
    if (head == "bk") return {MultiplicativeSpec::b_k(k), (1 << k) - 2};
    throw usage_error("--spec expects ak:K or bk:K");
}

int run(int argc, char** argv) {
    CLI::App app{"gcd/lcm sums: exact oracles, fast identities, asymptotic checks"};
    app.require_subcommand(1);

    // ---- sum
    auto* sum = app.add_subcommand("sum", "compute a tuple / classical / pair sum");
    std::string sum_kind = "S", sum_mode = "float", sum_algo = "auto",
                sum_format = "text", sum_output;
    int sum_k = 2, sum_threads = 0;
    u64 sum_x = 1, sum_budget = 0;
    sum->add_option("--kind", sum_kind,
                    "S|T|U|V|gcd_power|gcd_reciprocal|classical_G|classical_Ginv|"
                    "classical_L|classical_Linv|pair_gcd|pair_lcm");
    sum->add_option("--k", sum_k, "tuple arity (S/T/U/V, gcd kinds)");
    sum->add_option("--x", sum_x, "threshold")->required();
    sum->add_option("--mode", sum_mode, "exact|float");
    sum->add_option("--algorithm", sum_algo, "oracle|fast|auto");
    sum->add_option("--format", sum_format, "json|csv|text");
    sum->add_option("--output", sum_output, "output path (default stdout)");
    sum->add_option("--threads", sum_threads, "worker count (0 = default)");
    sum->add_option("--budget", sum_budget, "tuple budget override");

    // ---- constants
    auto* cst = app.add_subcommand("constants", "analytic constants and Euler products");
    std::string cst_name, cst_spec, cst_format = "text", cst_output;
    u64 cst_prime_limit = 100'000, cst_trunc = 2000;
    int cst_k = 2;
    double cst_eps = 0, cst_tol = 0.01;
    bool cst_strict = false;
    cst->add_option("--name", cst_name,
                    "zeta2|zeta3|zeta4|gamma|zetaprime2|Cf|beta|H")->required();
    cst->add_option("--spec", cst_spec, "ak:K or bk:K (for Cf)");
    cst->add_option("--prime-limit", cst_prime_limit, "Euler product truncation");
    cst->add_option("--k", cst_k, "arity (beta, H)");
    cst->add_option("--truncation", cst_trunc, "series truncation N (beta)");
    cst->add_option("--eps", cst_eps, "tail parameter (beta, H); 0 = 1/log N");
    cst->add_option("--tolerance", cst_tol, "requested tail tolerance");
    cst->add_flag("--strict", cst_strict, "exit 2 if tail exceeds tolerance");
    cst->add_option("--format", cst_format, "json|text");
    cst->add_option("--output", cst_output, "output path");

    // ---- verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite, ver_format = "text", ver_output;
    int ver_k = 0;
    u64 ver_x = 0;
    ver->add_option("--suite", ver_suite,
                    "identities|sandwich|relations|bounds|asymptotics|all")
        ->required();
    ver->add_option("--k", ver_k, "arity override");
    ver->add_option("--x", ver_x, "threshold override");
    ver->add_option("--format", ver_format, "json|text");
    ver->add_option("--output", ver_output, "output path");

    // ---- fit
    auto* fit = app.add_subcommand("fit", "least-squares polynomial fit in log x");
    std::string fit_kind = "S2", fit_grid = "geometric", fit_format = "text",
                fit_output;
    double fit_from = 1e4, fit_to = 1e6;
    int fit_points = 12, fit_degree = -1;
    fit->add_option("--kind", fit_kind, "S2|U2|gcd_pair|selftest");
    fit->add_option("--grid", fit_grid, "geometric");
    fit->add_option("--from", fit_from, "grid start");
    fit->add_option("--to", fit_to, "grid end");
    fit->add_option("--points", fit_points, "grid size");
    fit->add_option("--degree", fit_degree, "poly degree (default per kind)");
    fit->add_option("--format", fit_format, "json|text");
    fit->add_option("--output", fit_output, "output path");

    // ---- sieve
    auto* sie = app.add_subcommand("sieve", "export a multiplicative-function table");
    std::string sie_fn = "phi", sie_format = "csv", sie_output;
    u64 sie_limit = 1000;
    sie->add_option("--limit", sie_limit, "table limit")->required();
    sie->add_option("--function", sie_fn,
                    "phi|mobius|tau|omega|jordan2|spf|ak:K|bk:K");
    sie->add_option("--format", sie_format, "csv|json");
    sie->add_option("--output", sie_output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 1;
    }

    if (sum->parsed()) {
        SumRequest req;
        req.kind = sum_kind_from_name(sum_kind);
        req.k = sum_k;
        req.x = sum_x;
        req.mode = parse_mode(sum_mode);
        req.algorithm = parse_algo(sum_algo);
        req.threads = sum_threads;
        req.tuple_budget = sum_budget;
        SumResult res = compute_sum(req);
        if (sum_format == "json") emit(sum_result_to_json(res), sum_output);
        else if (sum_format == "csv") emit(sum_result_to_csv(res), sum_output);
        else if (sum_format == "text") emit(sum_result_to_text(res), sum_output);
        else throw usage_error("format must be json, csv or text");
        return 0;
    }

    if (cst->parsed()) {
        json j;
        std::string text;
        bool tail_warn = false;
        if (cst_name == "Cf") {
            if (cst_spec.empty()) throw usage_error("Cf requires --spec ak:K|bk:K");
            auto [spec, K] = parse_fspec(cst_spec);
            EulerProductResult r = euler_product_Cf(spec, K, cst_prime_limit);
            j = {{"name", "Cf"}, {"spec", cst_spec}, {"value", r.value},
                 {"prime_limit", r.prime_limit}, {"tail_estimate", r.tail_estimate}};
            text = "Cf[" + cst_spec + "] = " + std::to_string(r.value) +
                   "  (primes <= " + std::to_string(r.prime_limit) +
                   ", tail ~ " + std::to_string(r.tail_estimate) + ")";
            tail_warn = r.tail_estimate > cst_tol;
        } else if (cst_name == "beta") {
            std::optional<double> eps;
            if (cst_eps > 0) eps = cst_eps;
            BetaResult b = beta_k(cst_k, cst_trunc, eps);
            j = {{"name", "beta"}, {"k", cst_k}, {"truncation", b.truncation},
                 {"value", b.value}, {"tail_estimate", b.tail_estimate},
                 {"order_bound", b.order_bound}};
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "beta_%d (N=%llu) = %.10f  tail ~ %.2e  (analytic order bound %.3g)",
                          cst_k, static_cast<unsigned long long>(b.truncation),
                          b.value, b.tail_estimate, b.order_bound);
            text = buf;
            tail_warn = b.tail_estimate > cst_tol;
        } else if (cst_name == "H") {
            double eps = cst_eps > 0 ? cst_eps : 0.5;
            EulerProductResult r = euler_product_H(cst_k, eps, std::max<u64>(cst_prime_limit, 1000));
            j = {{"name", "H"}, {"k", cst_k}, {"eps", eps}, {"value", r.value},
                 {"prime_limit", r.prime_limit}, {"tail_estimate", r.tail_estimate}};
            text = "H_" + std::to_string(cst_k) + "(eps=" + std::to_string(eps) +
                   ") = " + std::to_string(r.value) + "  (primes <= " +
                   std::to_string(r.prime_limit) + ", tail ~ " +
                   std::to_string(r.tail_estimate) + ")";
            tail_warn = r.tail_estimate > cst_tol;
        } else {
            double v = constant_by_name(cst_name);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.15f", v);
            j = {{"name", cst_name}, {"value", v}};
            text = cst_name + " = " + buf;
        }
        if (cst_format == "json") emit(j.dump(2), cst_output);
        else emit(text, cst_output);
        if (cst_strict && tail_warn)
            throw convergence_error("tail estimate exceeds --tolerance");
        return 0;
    }

    if (ver->parsed()) {
        VerifySuiteResult res = run_verify_suite(ver_suite, ver_k, ver_x);
        if (ver_format == "json") emit(verify_result_to_json(res), ver_output);
        else emit(verify_result_to_text(res), ver_output);
        if (!res.overall())
            throw verification_error("suite " + ver_suite + " has failing checks");
        return 0;
    }

    if (fit->parsed()) {
        if (fit_grid != "geometric") throw usage_error("--grid must be geometric");
        if (fit_points < 2) throw usage_error("--points must be >= 2");
        int degree = fit_degree;
        if (degree < 0)
            degree = fit_kind == "U2" ? 2 : fit_kind == "gcd_pair" ? 1 : 3;
        if (fit_points < degree + 2)
            throw usage_error("need at least degree + 2 grid points");
        std::vector<std::pair<double, double>> pts;
        auto grid_x = [&](int i) {
            double r = fit_points == 1 ? 1.0
                                       : std::pow(fit_to / fit_from,
                                                  static_cast<double>(i) /
                                                      (fit_points - 1));
            return static_cast<u64>(fit_from * r + 0.5);
        };
        if (fit_kind == "S2") {
            S2Prefix pre(static_cast<u64>(fit_to + 0.5));
            for (int i = 0; i < fit_points; ++i) {
                u64 xi = grid_x(i);
                pts.push_back({static_cast<double>(xi), pre.s2(xi)});
            }
        } else if (fit_kind == "U2") {
            u64 top = static_cast<u64>(fit_to + 0.5);
            S2Prefix pre(top);
            SieveTables sv = build_sieve(std::max<u64>(top, 2));
            for (int i = 0; i < fit_points; ++i) {
                u64 xi = grid_x(i);
                pts.push_back({static_cast<double>(xi), u2_from_s2(pre, xi, sv)});
            }
        } else if (fit_kind == "gcd_pair") {
            u64 top = static_cast<u64>(fit_to + 0.5);
            SieveTables sv = build_sieve(std::max<u64>(top, 2));
            for (int i = 0; i < fit_points; ++i) {
                u64 xi = grid_x(i);
                double v = pair_sum_from_triangular(SingleFn::G, xi,
                                                    Mode::floating, sv)
                               .value.to_double();
                // conjectured shape x^2 * poly(log x): fit the normalized sum
                pts.push_back({static_cast<double>(xi),
                               v / (static_cast<double>(xi) * static_cast<double>(xi))});
            }
        } else if (fit_kind == "selftest") {
            for (int i = 0; i < fit_points; ++i) {
                u64 xi = grid_x(i);
                double t = std::log(static_cast<double>(xi));
                pts.push_back({static_cast<double>(xi),
                               1.5 * t * t * t - 2.0 * t * t + 0.25 * t + 7.0});
            }
        } else {
            throw usage_error("fit kind must be S2, U2, gcd_pair or selftest");
        }
        FitReport rep = fit_log_polynomial(pts, degree);
        if (fit_format == "json") emit(fit_report_to_json(rep), fit_output);
        else emit(fit_report_to_text(rep), fit_output);
        return 0;
    }

    if (sie->parsed()) {
        SieveTables sv = build_sieve(std::max<u64>(sie_limit, 2));
        FunctionTable t;
        if (sie_fn == "phi" || sie_fn == "mobius" || sie_fn == "tau" ||
            sie_fn == "omega" || sie_fn == "jordan2" || sie_fn == "spf") {
            t.limit = sie_limit;
            t.provenance = TableProvenance::raw;
            t.values.assign(sie_limit + 1, 0);
            for (u64 n = 1; n <= sie_limit; ++n) {
                if (sie_fn == "phi") t.values[n] = static_cast<i64>(sv.phi(n));
                else if (sie_fn == "mobius") t.values[n] = sv.mobius(n);
                else if (sie_fn == "tau") t.values[n] = static_cast<i64>(sv.tau(n));
                else if (sie_fn == "omega") t.values[n] = sv.omega(n);
                else if (sie_fn == "jordan2") t.values[n] = static_cast<i64>(sv.jordan2(n));
                else t.values[n] = n == 1 ? 1 : static_cast<i64>(sv.spf(n));
            }
        } else {
            auto [spec, K] = parse_fspec(sie_fn);
            (void)K;
            t = table_from_spec(spec, sie_limit, sv);
        }
        if (sie_format == "csv") emit(table_to_csv(t), sie_output);
        else if (sie_format == "json") emit(table_to_json(t), sie_output);
        else throw usage_error("sieve format must be csv or json");
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << std::endl;
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << std::endl;
        return 2;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}

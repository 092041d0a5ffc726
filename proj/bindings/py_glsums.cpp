// Python bindings for the main operations. Exact rationals cross the
// boundary as (num, den) decimal strings so nothing is silently rounded.

#include "glsums/asym.hpp"
#include "glsums/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace glsums;

namespace {

py::dict numeric_to_dict(const Numeric& v) {
    py::dict d;
    d["value"] = v.to_double();
    if (v.is_exact()) {
        d["num"] = v.rational().num().to_string();
        d["den"] = v.rational().den().to_string();
    }
    return d;
}

py::dict sum_result_to_dict(const SumResult& r) {
    py::dict d = numeric_to_dict(r.value);
    d["kind"] = sum_kind_name(r.request.kind);
    d["k"] = r.request.k;
    d["x"] = r.request.x;
    d["mode"] = mode_name(r.request.mode);
    d["algorithm"] = r.algorithm_used;
    d["elapsed_ms"] = r.elapsed_ms;
    d["term_count"] = r.term_count;
    return d;
}

} // namespace

PYBIND11_MODULE(pyglsums, m) {
    m.doc() = "gcd/lcm tuple sums: oracles, fast identities, asymptotic checks";

    m.def(
        "sum",
        [](const std::string& kind, int k, u64 x, const std::string& mode,
           const std::string& algorithm, int threads) {
            SumRequest req;
            req.kind = sum_kind_from_name(kind);
            req.k = k;
            req.x = x;
            req.mode = mode == "exact" ? Mode::exact : Mode::floating;
            req.algorithm = algorithm == "oracle" ? Algo::oracle
                            : algorithm == "fast" ? Algo::fast
                                                  : Algo::auto_;
            req.threads = threads;
            return sum_result_to_dict(compute_sum(req));
        },
        py::arg("kind"), py::arg("k") = 2, py::arg("x") = 1,
        py::arg("mode") = "float", py::arg("algorithm") = "auto",
        py::arg("threads") = 0);

    m.def("fast_s2", [](u64 x, const std::string& mode) {
        return sum_result_to_dict(fast_S2(x, mode == "exact" ? Mode::exact
                                                             : Mode::floating));
    }, py::arg("x"), py::arg("mode") = "float");

    m.def("h_single", [](u64 n) { return numeric_to_dict(h_single(n, Mode::exact)); },
          py::arg("n"));

    m.def("single_fn", [](const std::string& fn, u64 n) {
        SingleFn f = fn == "G" ? SingleFn::G
                     : fn == "Ginv" ? SingleFn::Ginv
                     : fn == "L" ? SingleFn::L
                     : fn == "Linv" ? SingleFn::Linv
                                    : SingleFn::F;
        return numeric_to_dict(single_fn(f, n, Mode::exact));
    }, py::arg("fn"), py::arg("n"));

    m.def("constant", [](const std::string& name) { return constant_by_name(name); },
          py::arg("name"));

    m.def("beta_k", [](int k, u64 truncation) {
        BetaResult b = beta_k(k, truncation);
        py::dict d;
        d["value"] = b.value;
        d["tail_estimate"] = b.tail_estimate;
        d["order_bound"] = b.order_bound;
        d["truncation"] = b.truncation;
        return d;
    }, py::arg("k"), py::arg("truncation") = 2000);

    m.def("euler_product_cf", [](const std::string& family, int k, u64 prime_limit) {
        MultiplicativeSpec spec = family == "a" ? MultiplicativeSpec::a_k(k)
                                                : MultiplicativeSpec::b_k(k);
        int K = family == "a" ? (1 << k) - 1 : (1 << k) - 2;
        EulerProductResult r = euler_product_Cf(spec, K, prime_limit);
        py::dict d;
        d["value"] = r.value;
        d["prime_limit"] = r.prime_limit;
        d["tail_estimate"] = r.tail_estimate;
        return d;
    }, py::arg("family"), py::arg("k"), py::arg("prime_limit") = 100'000);

    m.def("euler_sum_check", [](u64 n) {
        EulerSumResult e = euler_sum_check(n);
        py::dict d;
        d["value"] = e.value;
        d["error_vs_2zeta3"] = e.error_vs_2zeta3;
        return d;
    }, py::arg("n"));

    m.def("fit_log_polynomial",
          [](const std::vector<std::pair<double, double>>& samples, int degree) {
              FitReport r = fit_log_polynomial(samples, degree);
              py::dict d;
              d["degree"] = r.degree;
              d["coefficients"] = r.coefficients;
              d["leading"] = r.leading;
              d["condition"] = r.condition;
              d["residuals"] = r.residuals;
              return d;
          },
          py::arg("samples"), py::arg("degree"));

    m.def("verify", [](const std::string& suite, int k, u64 x) {
        VerifySuiteResult r = run_verify_suite(suite, k, x);
        py::list checks;
        for (const auto& c : r.checks) {
            py::dict d;
            d["id"] = c.id;
            d["pass"] = c.pass;
            d["lhs"] = c.lhs;
            d["rhs"] = c.rhs;
            checks.append(d);
        }
        py::dict d;
        d["suite"] = r.suite;
        d["overall"] = r.overall();
        d["checks"] = checks;
        return d;
    }, py::arg("suite"), py::arg("k") = 0, py::arg("x") = 0);
}

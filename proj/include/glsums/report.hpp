#pragma once

// Verification-suite runner and JSON/CSV/text emission for the CLI.

#include "glsums/asym.hpp"
#include "glsums/tuple_sums.hpp"

#include <string>
#include <vector>

namespace glsums {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string lhs;
    std::string rhs;
    std::string tolerance; // "0" for exact checks
};

struct VerifySuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// suite in {identities, sandwich, relations, bounds, asymptotics, all};
// k = 0 and x = 0 pick the documented default grids.
VerifySuiteResult run_verify_suite(const std::string& suite, int k, u64 x);

std::string sum_result_to_json(const SumResult& r);
std::string sum_result_to_csv(const SumResult& r);
std::string sum_result_to_text(const SumResult& r);

std::string fit_report_to_json(const FitReport& r);
std::string fit_report_to_text(const FitReport& r);

std::string verify_result_to_json(const VerifySuiteResult& r);
std::string verify_result_to_text(const VerifySuiteResult& r);

std::string mode_name(Mode m);
std::string algo_name(Algo a);

} // namespace glsums

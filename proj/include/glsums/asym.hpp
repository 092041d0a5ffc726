#pragma once

// Asymptotic machinery: closed-form main terms, Euler products for C_f and
// the k-variable H(eps,...,eps), the beta_k series, sandwich and relation
// verifiers, and least-squares polynomial fits in log x.

#include "glsums/multfun.hpp"
#include "glsums/numkit.hpp"
#include "glsums/tuple_sums.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glsums {

enum class MainFormula {
    G_asymp,         // x^2/(2 zeta2) (log x + 2 gamma - 1/2 - zeta'(2)/zeta2)
    G_minus_1,       // zeta3/(2 zeta2) x^2
    asympt_L,        // zeta3/(8 zeta2) x^4
    gcd_m_n,         // x^2/zeta2 (log x + 2 gamma - 1/2 - zeta2/2 - zeta'2/zeta2)
    gcd_recipr_m_n,  // zeta3/zeta2 x^2
    lcm_m_n,         // zeta3/(4 zeta2) x^4
    T_k_main,        // beta_k x
    gcd_recipr_k     // zeta(k+1)/zeta(k) x^k
};

struct MainTermSpec {
    MainFormula id;
    int k = 2;                    // gcd_recipr_k / T_k_main only
    std::optional<double> beta_k; // required by T_k_main
};

double main_term(const MainTermSpec& spec, double x);

struct EulerProductResult {
    double value = 0;
    u64 prime_limit = 0;
    double tail_estimate = 0; // heuristic bound on relative truncation error
};

// C_f = prod_p (1-1/p)^K sum_nu f(p^nu)/p^nu for multiplicative f with
// f(p) = K at every prime.
EulerProductResult euler_product_Cf(const MultiplicativeSpec& spec, int K,
                                    u64 prime_limit);

// H(eps,...,eps) = prod_p sum over exponent tuples with min 0 of
// p^-(max nu + eps sum nu); local factors by sorted-tuple enumeration.
EulerProductResult euler_product_H(int k, double eps, u64 prime_limit);

// sum_{n<=x} f(n)/n from a table.
Numeric partial_sum_over_n(const FunctionTable& f, u64 x, Mode mode);

struct SandwichReport {
    Rational lower;      // sum_{n<=x} c_k(n)/n, exact
    Rational value;      // oracle S_k or U_k, exact
    double upper;        // certified lower bound on sum_{n<=x^k} c_k(n)/n
    Rational upper_cert; // the same bound as an exact rational
    bool pass = false;
};

SandwichReport sandwich_check(SumKind kind, int k, u64 x, u64 budget = 0);

enum class Relation { S_from_U, U_from_S, T_from_U, U_from_T };

struct RelationReport {
    Relation relation;
    int k;
    u64 x;
    Rational lhs, rhs;
    bool pass = false;
};

RelationReport relation_check(Relation rel, int k, u64 x, u64 budget = 0);
std::string relation_name(Relation rel);

struct BetaResult {
    double value = 0;         // coprime-series partial, enumerated to max <= N
    double tail_estimate = 0; // self-convergence heuristic
    double order_bound = 0;   // k N^(eps-1) H(eps/k,...,eps/k), loose analytic order bound
    u64 truncation = 0;
    double value_half = 0;    // partial at N/2 (drives the tail heuristic)
    double value_quarter = 0;
};

// beta_k = sum over coprime k-tuples of 1/(lcm * max); enumeration is
// symmetry-reduced to sorted tuples with multinomial weights.
BetaResult beta_k(int k, u64 truncation, std::optional<double> eps = std::nullopt,
                  u64 budget = 0);

struct EulerSumResult {
    double value;
    double error_vs_2zeta3;
};

EulerSumResult euler_sum_check(u64 n);

struct FitReport {
    int degree = 0;
    std::vector<double> coefficients; // c_0..c_d in t = log x
    std::vector<double> residuals;    // value - poly(log x), per sample
    double leading = 0;               // c_d
    double condition = 0;             // normal-equation condition diagnostic
};

// Least squares for value(x) ~ sum c_j (log x)^j via a shifted basis and
// modified Gram-Schmidt; raw Vandermonde normal equations are near-singular
// on the narrow log ranges used here.
FitReport fit_log_polynomial(const std::vector<std::pair<double, double>>& samples,
                             int degree, double condition_threshold = 1e10);

} // namespace glsums

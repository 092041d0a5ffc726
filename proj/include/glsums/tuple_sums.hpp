#pragma once

// The headline sums: brute-force oracles over k-tuples for S/T/U/V, the
// O(x log x) hyperbola-method S2, divisor-grouped fast T2/U2, the
// classical single-variable partial sums and the symmetric-pair combiner.

#include "glsums/multfun.hpp"
#include "glsums/numkit.hpp"
#include "glsums/rational.hpp"
#include "glsums/sieve.hpp"

#include <string>
#include <vector>

namespace glsums {

enum class SumKind {
    S, T, U, V,
    gcd_power, gcd_reciprocal,
    classical_G, classical_Ginv, classical_L, classical_Linv,
    pair_gcd, pair_lcm
};

enum class Algo { oracle, fast, auto_ };

struct SumRequest {
    SumKind kind = SumKind::S;
    int k = 2;             // arity; ignored for classical/pair kinds
    u64 x = 1;
    Mode mode = Mode::floating;
    Algo algorithm = Algo::auto_;
    int threads = 0;       // 0 = GLSUMS_THREADS or hardware default
    u64 tuple_budget = 0;  // 0 = GLSUMS_BUDGET or 10^9
};

struct SumResult {
    SumRequest request;
    Numeric value;
    std::string algorithm_used;
    double elapsed_ms = 0;
    u64 term_count = 0;
};

u64 default_tuple_budget();
int default_threads();

std::string sum_kind_name(SumKind kind);
SumKind sum_kind_from_name(const std::string& name);

// Literal k-fold sum, parallel over the leading index, deterministic
// reduction. Exact mode accumulates integer numerators over lcm(1..x).
SumResult oracle_tuple_sum(SumKind kind, int k, u64 x, Mode mode,
                           int threads = 0, u64 budget = 0);

// S2(x) = 2 sum_{n<=x} L^(-1)(n) - H_x with L^(-1) built from the h-sieve.
SumResult fast_S2(u64 x, Mode mode);

// sum_{n<=x} L^(-1)(n) by the same route (the classical_Linv partial).
SumResult linv_partial_sum(u64 x, Mode mode);

// One h-sieve pass at x_max; S2(y) for any y <= x_max in O(sqrt y) blocks.
class S2Prefix {
public:
    explicit S2Prefix(u64 x_max);
    double s2(u64 y) const;
    u64 limit() const { return x_; }
    double harmonic_at(u64 n) const { return harmonic_[n]; }

private:
    u64 x_;
    std::vector<double> hd_prefix_; // prefix sums of h(d)/d
    std::vector<double> harmonic_;  // H_n
};

// h(n) = sum of 1/m over m <= n coprime to n.
Numeric h_single(u64 n, Mode mode);

enum class SingleFn { G, Ginv, L, Linv, F };

// Evaluates both the defining sum and the divisor identity, requires they
// agree, returns the value. Exact rationals up to the single-value cap.
Numeric single_fn(SingleFn fn, u64 n, Mode mode);

// sum over k-tuples of f(gcd): sum_{d<=x} (mu*f)(d) * floor(x/d)^k given the
// mu*f table; floor-quotient blocks kick in past 10^6.
SumResult gcd_kind_sum(const FunctionTable& mu_f, int k, u64 x, Mode mode);

// f = 1/n case: weight (mu*f)(d) = g(d)/d with g(d) = prod_{p|d} (1-p).
SumResult gcd_reciprocal_sum(int k, u64 x, Mode mode, const SieveTables& sieve);

SumResult classical_partial_sum(SingleFn fn, u64 x, Mode mode,
                                const SieveTables& sieve);

// sum_{m,n<=x} psi(m,n) = 2 sum_{n<=x} sum_{m<=n} psi(m,n) - sum psi(n,n)
// for the four symmetric psi kinds keyed by their single-variable partial.
SumResult pair_sum_from_triangular(SingleFn fn, u64 x, Mode mode,
                                   const SieveTables& sieve);

// Divisor-grouped identities for k = 2:
//   T2(x) = sum_d jordan2(d)/d^2 * H(floor(x/d))^2
//   U2(x) = sum_d mu(d)/d^2      * H(floor(x/d))^2
SumResult fast_T2(u64 x, Mode mode, const SieveTables& sieve);
SumResult fast_U2(u64 x, Mode mode, const SieveTables& sieve);

// U2 via the Mobius relation over S2 evaluated at floor(x/d).
double u2_from_s2(const S2Prefix& pre, u64 x, const SieveTables& sieve);

// CLI-facing dispatcher; builds what it needs and routes kind/algorithm.
SumResult compute_sum(const SumRequest& req);

} // namespace glsums

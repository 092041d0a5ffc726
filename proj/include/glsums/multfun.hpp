#pragma once

// Multiplicative-function algebra: prime-power rules, tabulation from the
// spf sieve, Dirichlet convolution and Mobius inversion over 1..N.

#include "glsums/sieve.hpp"

#include <functional>
#include <string>
#include <vector>

namespace glsums {

// A multiplicative function given by its values on prime powers; f(1) = 1.
struct MultiplicativeSpec {
    std::string name;
    std::function<i64(u64 p, unsigned nu)> rule;

    // Tuple-counting functions from the lcm identities: a_k counts k-tuples
    // with a given lcm, b_k additionally requires the tuple gcd to be 1.
    static MultiplicativeSpec a_k(int k);
    static MultiplicativeSpec b_k(int k);
    static MultiplicativeSpec tau_pow(int k); // tau(n)^k
    static MultiplicativeSpec one();
    static MultiplicativeSpec identity(); // f(n) = n
    static MultiplicativeSpec phi();
    static MultiplicativeSpec jordan2();
};

// Guard: (nu+1)^k at the largest exponent nu = log2(limit) must fit i64.
void check_rule_overflow(const MultiplicativeSpec& spec, int k, u64 limit);

enum class TableProvenance { sieved_from_spec, convolved, inverted, raw };

struct FunctionTable {
    u64 limit = 0;
    std::vector<i64> values; // index 1..limit (values[0] unused)
    TableProvenance provenance = TableProvenance::raw;

    i64 at(u64 n) const { return values[n]; }
};

i64 eval_multiplicative(const MultiplicativeSpec& spec, u64 n, const SieveTables& sieve);

FunctionTable table_from_spec(const MultiplicativeSpec& spec, u64 limit,
                              const SieveTables& sieve);

// (f*g)(n) = sum_{d|n} f(d) g(n/d), divisor-pair double loop, O(N log N).
FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g);

// Given F on 1..N returns f = mu * F, the unique f with sum_{d|n} f(d) = F(n).
FunctionTable mobius_invert(const FunctionTable& F, const SieveTables& sieve);

// Table export used by the CLI `sieve` subcommand.
std::string table_to_csv(const FunctionTable& t);
std::string table_to_json(const FunctionTable& t);

} // namespace glsums

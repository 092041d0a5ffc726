#include "glsums/multfun.hpp"

#include "glsums/errors.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace glsums {

namespace {

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r))
            throw resource_error("multiplicative rule overflows 64-bit");
    }
    return r;
}

} // namespace

MultiplicativeSpec MultiplicativeSpec::a_k(int k) {
    return {"a_" + std::to_string(k), [k](u64, unsigned nu) {
                return ipow(nu + 1, k) - ipow(nu, k);
            }};
}

MultiplicativeSpec MultiplicativeSpec::b_k(int k) {
    return {"b_" + std::to_string(k), [k](u64, unsigned nu) {
                return ipow(nu + 1, k) - 2 * ipow(nu, k) + ipow(static_cast<i64>(nu) - 1, k);
            }};
}

MultiplicativeSpec MultiplicativeSpec::tau_pow(int k) {
    return {"tau^" + std::to_string(k), [k](u64, unsigned nu) {
                return ipow(nu + 1, k);
            }};
}

MultiplicativeSpec MultiplicativeSpec::one() {
    return {"1", [](u64, unsigned) -> i64 { return 1; }};
}

MultiplicativeSpec MultiplicativeSpec::identity() {
    return {"id", [](u64 p, unsigned nu) { return ipow(static_cast<i64>(p), nu); }};
}

MultiplicativeSpec MultiplicativeSpec::phi() {
    return {"phi", [](u64 p, unsigned nu) {
                return ipow(static_cast<i64>(p), nu) - ipow(static_cast<i64>(p), nu - 1);
            }};
}

MultiplicativeSpec MultiplicativeSpec::jordan2() {
    return {"jordan2", [](u64 p, unsigned nu) {
                i64 pp = static_cast<i64>(p) * static_cast<i64>(p);
                return ipow(pp, nu) - ipow(pp, nu - 1);
            }};
}

void check_rule_overflow(const MultiplicativeSpec& spec, int k, u64 limit) {
    unsigned nu_max = limit < 2 ? 1 : std::bit_width(limit) - 1;
    (void)spec.rule(2, nu_max); // throws resource_error on 64-bit overflow
    if (k > 10 || limit > 100'000'000)
        throw resource_error(
            "a_k/b_k tables supported for k <= 10 and N <= 10^8 in 64-bit");
}

i64 eval_multiplicative(const MultiplicativeSpec& spec, u64 n, const SieveTables& sieve) {
    if (n == 0) throw usage_error("eval_multiplicative: n must be >= 1");
    if (n > sieve.limit())
        throw usage_error("eval_multiplicative: n exceeds sieve limit");
    i64 result = 1;
    while (n > 1) {
        u64 p = sieve.spf(n);
        unsigned nu = 0;
        while (n % p == 0) {
            n /= p;
            ++nu;
        }
        result *= spec.rule(p, nu);
    }
    return result;
}

FunctionTable table_from_spec(const MultiplicativeSpec& spec, u64 limit,
                              const SieveTables& sieve) {
    if (limit > sieve.limit())
        throw usage_error("table_from_spec: limit exceeds sieve limit");
    FunctionTable t;
    t.limit = limit;
    t.provenance = TableProvenance::sieved_from_spec;
    t.values.assign(limit + 1, 0);
    t.values[1] = 1;
    // pp[i] = spf(i)^(exponent of spf(i) in i): one multiply per entry
    std::vector<u64> pp(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        u64 p = sieve.spf(i), m = i / p;
        pp[i] = (m % p == 0) ? pp[m] * p : p;
        u64 rest = i / pp[i];
        if (rest == 1) {
            unsigned nu = 0;
            for (u64 q = pp[i]; q > 1; q /= p) ++nu;
            t.values[i] = spec.rule(p, nu);
        } else {
            t.values[i] = t.values[rest] * t.values[pp[i]];
        }
    }
    return t;
}

FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g) {
    if (f.limit != g.limit)
        throw usage_error("dirichlet_convolve: table limits differ");
    FunctionTable r;
    r.limit = f.limit;
    r.provenance = TableProvenance::convolved;
    r.values.assign(f.limit + 1, 0);
    for (u64 d = 1; d <= f.limit; ++d) {
        i64 fd = f.values[d];
        if (fd == 0) continue;
        for (u64 n = d, m = 1; n <= f.limit; n += d, ++m) {
            i64 prod, sum;
            if (__builtin_mul_overflow(fd, g.values[m], &prod) ||
                __builtin_add_overflow(r.values[n], prod, &sum))
                throw resource_error("dirichlet_convolve: 64-bit overflow");
            r.values[n] = sum;
        }
    }
    return r;
}

FunctionTable mobius_invert(const FunctionTable& F, const SieveTables& sieve) {
    if (F.limit > sieve.limit())
        throw usage_error("mobius_invert: table exceeds sieve limit");
    FunctionTable r;
    r.limit = F.limit;
    r.provenance = TableProvenance::inverted;
    r.values.assign(F.limit + 1, 0);
    for (u64 d = 1; d <= F.limit; ++d) {
        int mu = sieve.mobius(d);
        if (mu == 0) continue;
        for (u64 n = d, m = 1; n <= F.limit; n += d, ++m)
            r.values[n] += mu * F.values[m];
    }
    return r;
}

std::string table_to_csv(const FunctionTable& t) {
    std::ostringstream out;
    out << "n,value\n";
    for (u64 n = 1; n <= t.limit; ++n) out << n << ',' << t.values[n] << '\n';
    return out.str();
}

std::string table_to_json(const FunctionTable& t) {
    std::ostringstream out;
    out << '[';
    for (u64 n = 1; n <= t.limit; ++n) {
        if (n > 1) out << ',';
        out << t.values[n];
    }
    out << ']';
    return out.str();
}

} // namespace glsums

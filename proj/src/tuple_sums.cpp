#include "glsums/tuple_sums.hpp"

#include "glsums/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace glsums {

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

u64 env_u64(const char* name, u64 fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    double d = std::strtod(v, &end); // accept 1e9-style values
    if (end == v || d < 1) return fallback;
    return static_cast<u64>(d);
}

u64 pow_checked(u64 x, int k, bool* overflow) {
    u128 r = 1;
    for (int i = 0; i < k; ++i) {
        r *= x;
        if (r > ~u64{0}) {
            *overflow = true;
            return 0;
        }
    }
    *overflow = false;
    return static_cast<u64>(r);
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

} // namespace

u64 default_tuple_budget() { return env_u64("GLSUMS_BUDGET", 1'000'000'000ULL); }

int default_threads() {
    u64 t = env_u64("GLSUMS_THREADS", 0);
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<int>(std::min<u64>(t, 64));
}

std::string sum_kind_name(SumKind kind) {
    switch (kind) {
        case SumKind::S: return "S";
        case SumKind::T: return "T";
        case SumKind::U: return "U";
        case SumKind::V: return "V";
        case SumKind::gcd_power: return "gcd_power";
        case SumKind::gcd_reciprocal: return "gcd_reciprocal";
        case SumKind::classical_G: return "classical_G";
        case SumKind::classical_Ginv: return "classical_Ginv";
        case SumKind::classical_L: return "classical_L";
        case SumKind::classical_Linv: return "classical_Linv";
        case SumKind::pair_gcd: return "pair_gcd";
        case SumKind::pair_lcm: return "pair_lcm";
    }
    return "?";
}

SumKind sum_kind_from_name(const std::string& name) {
    static const std::map<std::string, SumKind> table = {
        {"S", SumKind::S}, {"T", SumKind::T}, {"U", SumKind::U}, {"V", SumKind::V},
        {"gcd_power", SumKind::gcd_power},
        {"gcd_reciprocal", SumKind::gcd_reciprocal},
        {"classical_G", SumKind::classical_G},
        {"classical_Ginv", SumKind::classical_Ginv},
        {"classical_L", SumKind::classical_L},
        {"classical_Linv", SumKind::classical_Linv},
        {"pair_gcd", SumKind::pair_gcd}, {"pair_lcm", SumKind::pair_lcm}};
    auto it = table.find(name);
    if (it == table.end()) throw usage_error("unknown sum kind: " + name);
    return it->second;
}

// ---------------------------------------------------------------------------
// oracle

namespace {

// Per-worker oracle state. Exact mode buckets tuples by their lcm so the
// big-integer divisions D/lcm happen once per distinct lcm, not per tuple.
struct OracleWorker {
    SumKind kind;
    NeumaierSum flt;
    std::unordered_map<u64, u64> weight_by_lcm; // count (S,U) or sum of gcds (T)
    i128 int_acc = 0;                           // V

    void on_tuple(u64 g, u64 l, u64 prod, Mode mode) {
        switch (kind) {
            case SumKind::S:
                if (mode == Mode::exact) ++weight_by_lcm[l];
                else flt.add(1.0 / static_cast<double>(l));
                break;
            case SumKind::T:
                if (mode == Mode::exact) weight_by_lcm[l] += g;
                else flt.add(static_cast<double>(g) / static_cast<double>(l));
                break;
            case SumKind::U:
                if (g != 1) return;
                if (mode == Mode::exact) ++weight_by_lcm[l];
                else flt.add(1.0 / static_cast<double>(l));
                break;
            case SumKind::V:
                int_acc += prod / l;
                break;
            default: break;
        }
    }
};

void enumerate_range(u64 lo, u64 hi, u64 x, int k, Mode mode, OracleWorker& w) {
    // iterative nested loops via explicit index stack; levels carry the
    // running gcd / lcm / product of the prefix
    std::vector<u64> idx(k + 1, 0), g(k + 1, 0), l(k + 1, 1), prod(k + 1, 1);
    for (u64 n1 = lo; n1 <= hi; ++n1) {
        idx[1] = n1;
        g[1] = n1;
        l[1] = n1;
        prod[1] = n1;
        if (k == 1) {
            w.on_tuple(g[1], l[1], prod[1], mode);
            continue;
        }
        int level = 2;
        idx[level] = 0;
        while (level >= 2) {
            if (idx[level] == x) {
                --level;
                continue;
            }
            u64 n = ++idx[level];
            g[level] = std::gcd(g[level - 1], n);
            l[level] = lcm_u64(l[level - 1], n);
            prod[level] = prod[level - 1] * n;
            if (level == k) {
                w.on_tuple(g[level], l[level], prod[level], mode);
            } else {
                ++level;
                idx[level] = 0;
            }
        }
    }
}

} // namespace

SumResult oracle_tuple_sum(SumKind kind, int k, u64 x, Mode mode, int threads,
                           u64 budget) {
    if (kind != SumKind::S && kind != SumKind::T && kind != SumKind::U &&
        kind != SumKind::V)
        throw usage_error("oracle_tuple_sum: kind must be S, T, U or V");
    if (k < 1) throw usage_error("oracle_tuple_sum: k must be >= 1");
    if (x < 1) throw usage_error("oracle_tuple_sum: x must be >= 1");
    if (budget == 0) budget = default_tuple_budget();
    bool overflow = false;
    u64 tuples = pow_checked(x, k, &overflow);
    if (overflow || tuples > budget)
        throw resource_error("oracle_tuple_sum: " +
                             (overflow ? std::string("x^k overflows")
                                       : std::to_string(tuples)) +
                             " tuples exceed budget " + std::to_string(budget) +
                             "; required budget >= " +
                             (overflow ? "2^64" : std::to_string(tuples)));
    if (mode == Mode::exact && x > kExactOracleCap)
        throw resource_error("oracle_tuple_sum: exact mode capped at x = " +
                             std::to_string(kExactOracleCap));
    Stopwatch sw;
    if (threads <= 0) threads = default_threads();
    int nw = static_cast<int>(std::min<u64>(threads, x));

    std::vector<OracleWorker> workers(nw);
    for (auto& w : workers) w.kind = kind;
    {
        std::vector<std::thread> pool;
        u64 chunk = x / nw, extra = x % nw, next = 1;
        for (int w = 0; w < nw; ++w) {
            u64 lo = next;
            u64 hi = lo + chunk - 1 + (static_cast<u64>(w) < extra ? 1 : 0);
            next = hi + 1;
            pool.emplace_back([&, w, lo, hi] {
                enumerate_range(lo, hi, x, k, mode, workers[w]);
            });
        }
        for (auto& t : pool) t.join();
    }

    SumResult res;
    res.request = {kind, k, x, mode, Algo::oracle, threads, budget};
    res.algorithm_used = "oracle";
    res.term_count = tuples;
    if (kind == SumKind::V) {
        i128 total = 0;
        for (auto& w : workers) total += w.int_acc;
        res.value = mode == Mode::exact
                        ? Numeric::exact(Rational::from_integer(BigInt::from_i128(total)))
                        : Numeric::floating(static_cast<double>(total));
    } else if (mode == Mode::exact) {
        std::map<u64, u64> merged; // ordered for a deterministic final pass
        for (auto& w : workers)
            for (auto& [l, c] : w.weight_by_lcm) merged[l] += c;
        BigInt den = lcm_upto(x);
        BigInt num(0);
        for (auto& [l, c] : merged) {
            BigInt q = den.div_u64(l);
            q *= BigInt::from_u64(c);
            num += q;
        }
        res.value = Numeric::exact(Rational(std::move(num), std::move(den)));
    } else {
        NeumaierSum total;
        for (auto& w : workers) total.merge(w.flt);
        res.value = Numeric::floating(total.value());
    }
    res.elapsed_ms = sw.ms();
    return res;
}

// ---------------------------------------------------------------------------
// h sieve and fast S2

namespace {

// mobius table alone, cheaper than full SieveTables for the big float runs
std::vector<std::int8_t> mobius_table(u64 n) {
    std::vector<std::int8_t> mu(n + 1, 0);
    std::vector<std::uint32_t> spf(n + 1, 0);
    std::vector<u64> primes;
    mu[1] = 1;
    for (u64 i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(i);
        }
        for (u64 p : primes) {
            if (p > spf[i] || i * p > n) break;
            spf[i * p] = static_cast<std::uint32_t>(p);
        }
        u64 p = spf[i], m = i / p;
        mu[i] = (m % p == 0) ? 0 : static_cast<std::int8_t>(-mu[m]);
    }
    return mu;
}

// h(d) for d <= x: h = sum_{e|d} mu(e)/e * H_{d/e}, sieved in O(x log x).
std::vector<double> h_table(u64 x, const std::vector<std::int8_t>& mu) {
    std::vector<double> h(x + 1, 0.0);
    for (u64 e = 1; e <= x; ++e) {
        if (mu[e] == 0) continue;
        double w = static_cast<double>(mu[e]) / static_cast<double>(e);
        double hrun = 0.0;
        for (u64 m = 1, n = e; n <= x; ++m, n += e) {
            hrun += 1.0 / static_cast<double>(m);
            h[n] += w * hrun;
        }
    }
    return h;
}

// sum_{n<=x} L^(-1)(n) = sum_{d<=x} h(d)/d * H_{floor(x/d)}; iterate d
// descending so the harmonic prefix can grow incrementally.
double linv_partial_float(u64 x, const std::vector<double>& h, double* h_x_out) {
    NeumaierSum acc;
    double hrun = 0.0;
    u64 vrun = 0;
    for (u64 d = x; d >= 1; --d) {
        u64 v = x / d;
        while (vrun < v) {
            ++vrun;
            hrun += 1.0 / static_cast<double>(vrun);
        }
        acc.add(h[d] / static_cast<double>(d) * hrun);
    }
    if (h_x_out) *h_x_out = hrun;
    return acc.value();
}

struct ExactLinv {
    BigInt numerator;   // of sum_{n<=x} L^(-1)(n) over denominator L^4
    BigInt L;           // lcm(1..x)
    BigInt harmonic_num; // A_x = L * H_x
    u64 ops = 0;
};

// Exact h-sieve route over the common denominator L = lcm(1..x):
//   A_m = L*H_m;  B_d = L^2*h(d) = sum_{e|d} mu(e)*(L/e)*A_{d/e};
//   sum L^(-1) = sum_d B_d*(L/d)*A_{floor(x/d)} / L^4.
ExactLinv linv_partial_exact(u64 x) {
    if (x > kExactOracleCap)
        throw resource_error("linv_partial_exact: exact mode capped at x = " +
                             std::to_string(kExactOracleCap));
    ExactLinv out;
    out.L = lcm_upto(x);
    std::vector<std::int8_t> mu = mobius_table(x);
    std::vector<BigInt> A(x + 1);
    for (u64 m = 1; m <= x; ++m) {
        A[m] = A[m - 1] + out.L.div_u64(m);
        ++out.ops;
    }
    std::vector<BigInt> B(x + 1);
    for (u64 e = 1; e <= x; ++e) {
        if (mu[e] == 0) continue;
        BigInt w = out.L.div_u64(e);
        if (mu[e] < 0) w = -w;
        for (u64 m = 1, n = e; n <= x; ++m, n += e) {
            B[n] += w * A[m];
            ++out.ops;
        }
    }
    BigInt num(0);
    for (u64 d = 1; d <= x; ++d) {
        num += B[d] * out.L.div_u64(d) * A[x / d];
        ++out.ops;
    }
    out.numerator = std::move(num);
    out.harmonic_num = A[x];
    return out;
}

} // namespace

SumResult linv_partial_sum(u64 x, Mode mode) {
    Stopwatch sw;
    SumResult res;
    res.request = {SumKind::classical_Linv, 2, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = "h_sieve";
    if (mode == Mode::exact) {
        ExactLinv e = linv_partial_exact(x);
        BigInt den = e.L * e.L * e.L * e.L;
        res.value = Numeric::exact(Rational(std::move(e.numerator), std::move(den)));
        res.term_count = e.ops;
    } else {
        if (x > 100'000'000)
            throw resource_error("linv_partial_sum: float envelope is x <= 10^8");
        std::vector<std::int8_t> mu = mobius_table(x);
        std::vector<double> h = h_table(x, mu);
        res.value = Numeric::floating(linv_partial_float(x, h, nullptr));
        res.term_count = x;
    }
    res.elapsed_ms = sw.ms();
    return res;
}

SumResult fast_S2(u64 x, Mode mode) {
    Stopwatch sw;
    SumResult res;
    res.request = {SumKind::S, 2, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = "hyperbola_h_sieve";
    if (x < 1) throw usage_error("fast_S2: x must be >= 1");
    if (mode == Mode::exact) {
        ExactLinv e = linv_partial_exact(x);
        // S2 = 2*num/L^4 - A_x/L  ->  (2*num - A_x*L^3) / L^4
        BigInt L3 = e.L * e.L * e.L;
        BigInt num = e.numerator + e.numerator - e.harmonic_num * L3;
        res.value = Numeric::exact(Rational(std::move(num), L3 * e.L));
        res.term_count = e.ops;
    } else {
        if (x > 100'000'000)
            throw resource_error("fast_S2: float envelope is x <= 10^8");
        std::vector<std::int8_t> mu = mobius_table(x);
        std::vector<double> h = h_table(x, mu);
        double h_x = 0.0;
        double linv = linv_partial_float(x, h, &h_x);
        res.value = Numeric::floating(2.0 * linv - h_x);
        res.term_count = x;
    }
    res.elapsed_ms = sw.ms();
    return res;
}

S2Prefix::S2Prefix(u64 x_max) : x_(x_max) {
    std::vector<std::int8_t> mu = mobius_table(x_);
    std::vector<double> h = h_table(x_, mu);
    hd_prefix_.assign(x_ + 1, 0.0);
    harmonic_.assign(x_ + 1, 0.0);
    NeumaierSum hd;
    for (u64 d = 1; d <= x_; ++d) {
        hd.add(h[d] / static_cast<double>(d));
        hd_prefix_[d] = hd.value();
        harmonic_[d] = harmonic_[d - 1] + 1.0 / static_cast<double>(d);
    }
}

double S2Prefix::s2(u64 y) const {
    if (y > x_) throw usage_error("S2Prefix: query beyond prepared limit");
    if (y == 0) return 0.0;
    // sum_{d<=y} h(d)/d * H_{floor(y/d)} over blocks of equal floor(y/d)
    NeumaierSum acc;
    for (u64 d = 1; d <= y;) {
        u64 v = y / d;
        u64 d_hi = y / v;
        acc.add(harmonic_[v] * (hd_prefix_[d_hi] - hd_prefix_[d - 1]));
        d = d_hi + 1;
    }
    return 2.0 * acc.value() - harmonic_[y];
}

// ---------------------------------------------------------------------------
// single-variable functions

namespace {

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> f;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

struct Divisor {
    u64 d;
    u64 phi;
    u64 jordan2;
};

std::vector<Divisor> divisors_with_totients(u64 n) {
    auto f = factorize(n);
    std::vector<Divisor> out{{1, 1, 1}};
    for (auto [p, e] : f) {
        std::size_t base = out.size();
        u64 pk = 1, phik = 1, j2k = 1;
        for (unsigned i = 1; i <= e; ++i) {
            phik = (i == 1) ? p - 1 : phik * p;
            j2k = (i == 1) ? p * p - 1 : j2k * p * p;
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back({out[j].d * pk, out[j].phi * phik, out[j].jordan2 * j2k});
        }
    }
    return out;
}

} // namespace

Numeric h_single(u64 n, Mode mode) {
    if (n < 1) throw usage_error("h_single: n must be >= 1");
    if (mode == Mode::exact || n <= kExactSingleCap) {
        if (n > kExactSingleCap)
            throw resource_error("h_single: exact mode capped at n = " +
                                 std::to_string(kExactSingleCap));
        BigInt L = lcm_upto(n);
        BigInt num(0);
        for (u64 m = 1; m <= n; ++m)
            if (std::gcd(m, n) == 1) num += L.div_u64(m);
        Rational r(std::move(num), std::move(L));
        return mode == Mode::exact ? Numeric::exact(std::move(r))
                                   : Numeric::floating(r.to_double());
    }
    NeumaierSum acc;
    for (u64 m = 1; m <= n; ++m)
        if (std::gcd(m, n) == 1) acc.add(1.0 / static_cast<double>(m));
    return Numeric::floating(acc.value());
}

namespace {

Rational single_fn_exact(SingleFn fn, u64 n) {
    auto divs = divisors_with_totients(n);
    std::unordered_map<u64, const Divisor*> by_d;
    for (const auto& d : divs) by_d[d.d] = &d;
    switch (fn) {
        case SingleFn::G: {
            u128 def = 0;
            for (u64 k = 1; k <= n; ++k) def += std::gcd(k, n);
            u128 id = 0;
            for (const auto& d : divs) id += static_cast<u128>(d.d) * by_d[n / d.d]->phi;
            if (def != id) throw internal_error("single_fn: G identity mismatch");
            return Rational::from_integer(BigInt::from_u128(def));
        }
        case SingleFn::Ginv: {
            // both forms over denominator n
            u128 def = 0;
            for (u64 k = 1; k <= n; ++k) def += n / std::gcd(k, n);
            u128 id = 0;
            for (const auto& d : divs) id += static_cast<u128>(d.d) * d.phi;
            if (def != id) throw internal_error("single_fn: Ginv identity mismatch");
            return Rational(BigInt::from_u128(def), BigInt::from_u64(n));
        }
        case SingleFn::L: {
            u128 def = 0;
            for (u64 k = 1; k <= n; ++k)
                def += static_cast<u128>(k) / std::gcd(k, n) * n;
            u128 s = 1;
            for (const auto& d : divs) s += static_cast<u128>(d.d) * d.phi;
            u128 id = static_cast<u128>(n) * s;
            if (id % 2 != 0 || def != id / 2)
                throw internal_error("single_fn: L identity mismatch");
            return Rational::from_integer(BigInt::from_u128(def));
        }
        case SingleFn::Linv: {
            if (n > kExactSingleCap)
                throw resource_error("single_fn: exact Linv capped at n = " +
                                     std::to_string(kExactSingleCap));
            BigInt L = lcm_upto(n);
            BigInt num(0);
            for (u64 k = 1; k <= n; ++k) num += L.div_u64(k / std::gcd(k, n) * n);
            // identity: (1/n) sum_{d|n} h(d); h(d) = hnum_d / L
            BigInt num2(0);
            for (const auto& d : divs) {
                BigInt hnum(0);
                for (u64 m = 1; m <= d.d; ++m)
                    if (std::gcd(m, d.d) == 1) hnum += L.div_u64(m);
                num2 += hnum;
            }
            Rational def(std::move(num), L);
            Rational id(std::move(num2), L * BigInt::from_u64(n));
            if (def != id) throw internal_error("single_fn: Linv identity mismatch");
            return def;
        }
        case SingleFn::F: {
            if (n > kExactSingleCap)
                throw resource_error("single_fn: exact F capped at n = " +
                                     std::to_string(kExactSingleCap));
            BigInt L = lcm_upto(n);
            // def: sum (k,n)^2/(k n) = [sum (k,n)^2 * (L/k)] / (n L)
            BigInt num(0);
            for (u64 k = 1; k <= n; ++k) {
                u64 g = std::gcd(k, n);
                num += L.div_u64(k) * BigInt::from_u64(g * g);
            }
            // id: (1/n) sum_{d|n} jordan2(d)/d * H_{n/d}
            //   = [sum_d jordan2(d) * (L/d) * A_{n/d}] / (n L^2), A_m = L H_m
            std::vector<BigInt> A(n + 1);
            for (u64 m = 1; m <= n; ++m) A[m] = A[m - 1] + L.div_u64(m);
            BigInt num2(0);
            for (const auto& d : divs)
                num2 += BigInt::from_u64(d.jordan2) * L.div_u64(d.d) * A[n / d.d];
            Rational def(std::move(num), L * BigInt::from_u64(n));
            Rational id(std::move(num2), L * L * BigInt::from_u64(n));
            if (def != id) throw internal_error("single_fn: F identity mismatch");
            return def;
        }
    }
    throw usage_error("single_fn: unknown function");
}

double single_fn_float_big(SingleFn fn, u64 n) {
    // beyond the exact cap: defining sum and identity both in compensated
    // float, cross-checked to 1e-9 relative
    NeumaierSum def, id;
    switch (fn) {
        case SingleFn::Linv: {
            for (u64 k = 1; k <= n; ++k)
                def.add(1.0 / (static_cast<double>(k / std::gcd(k, n)) *
                               static_cast<double>(n)));
            for (const auto& d : divisors_with_totients(n)) {
                // h(d) float
                NeumaierSum h;
                for (u64 m = 1; m <= d.d; ++m)
                    if (std::gcd(m, d.d) == 1) h.add(1.0 / static_cast<double>(m));
                id.add(h.value());
            }
            double a = def.value(), b = id.value() / static_cast<double>(n);
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
                throw internal_error("single_fn: Linv float identity mismatch");
            return a;
        }
        case SingleFn::F: {
            for (u64 k = 1; k <= n; ++k) {
                double g = static_cast<double>(std::gcd(k, n));
                def.add(g * g / (static_cast<double>(k) * static_cast<double>(n)));
            }
            NeumaierSum idacc;
            for (const auto& d : divisors_with_totients(n)) {
                double Hm = 0.0;
                u64 m = n / d.d;
                for (u64 j = 1; j <= m; ++j) Hm += 1.0 / static_cast<double>(j);
                idacc.add(static_cast<double>(d.jordan2) / static_cast<double>(d.d) * Hm);
            }
            double a = def.value(), b = idacc.value() / static_cast<double>(n);
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
                throw internal_error("single_fn: F float identity mismatch");
            return a;
        }
        default:
            break;
    }
    throw resource_error("single_fn: value exceeds the exact envelope");
}

} // namespace

Numeric single_fn(SingleFn fn, u64 n, Mode mode) {
    if (n < 1) throw usage_error("single_fn: n must be >= 1");
    bool exact_ok = (fn == SingleFn::G || fn == SingleFn::Ginv || fn == SingleFn::L)
                        ? true
                        : n <= kExactSingleCap;
    if (mode == Mode::exact || exact_ok) {
        Rational r = single_fn_exact(fn, n);
        return mode == Mode::exact ? Numeric::exact(std::move(r))
                                   : Numeric::floating(r.to_double());
    }
    return Numeric::floating(single_fn_float_big(fn, n));
}

// ---------------------------------------------------------------------------
// gcd-kind sums and classical partials

SumResult gcd_kind_sum(const FunctionTable& mu_f, int k, u64 x, Mode mode) {
    if (k < 1) throw usage_error("gcd_kind_sum: k must be >= 1");
    if (x > mu_f.limit) throw usage_error("gcd_kind_sum: x exceeds table limit");
    Stopwatch sw;
    SumResult res;
    res.request = {SumKind::gcd_power, k, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = x > 1'000'000 ? "divisor_blocks" : "divisor_sum";
    res.term_count = x;
    if (mode == Mode::exact) {
        BigInt acc(0);
        for (u64 d = 1; d <= x; ++d) {
            i64 w = mu_f.values[d];
            if (w == 0) continue;
            u64 q = x / d;
            bool ovf = false;
            u64 qk = pow_checked(q, k, &ovf);
            BigInt term;
            if (!ovf) {
                term = BigInt::from_u64(qk);
            } else {
                term = BigInt::from_u64(q);
                BigInt base = term;
                for (int i = 1; i < k; ++i) term *= base;
            }
            term *= w;
            acc += term;
        }
        res.value = Numeric::exact(Rational::from_integer(std::move(acc)));
    } else if (x > 1'000'000) {
        // floor-quotient blocks over table prefix sums
        std::vector<double> prefix(x + 1, 0.0);
        NeumaierSum p;
        for (u64 d = 1; d <= x; ++d) {
            p.add(static_cast<double>(mu_f.values[d]));
            prefix[d] = p.value();
        }
        NeumaierSum acc;
        for (u64 d = 1; d <= x;) {
            u64 v = x / d;
            u64 d_hi = x / v;
            double qk = std::pow(static_cast<double>(v), k);
            acc.add(qk * (prefix[d_hi] - prefix[d - 1]));
            d = d_hi + 1;
        }
        res.value = Numeric::floating(acc.value());
    } else {
        NeumaierSum acc;
        for (u64 d = 1; d <= x; ++d) {
            i64 w = mu_f.values[d];
            if (w == 0) continue;
            double q = static_cast<double>(x / d);
            double qk = q;
            for (int i = 1; i < k; ++i) qk *= q;
            acc.add(static_cast<double>(w) * qk);
        }
        res.value = Numeric::floating(acc.value());
    }
    res.elapsed_ms = sw.ms();
    return res;
}

SumResult gcd_reciprocal_sum(int k, u64 x, Mode mode, const SieveTables& sieve) {
    if (k < 1) throw usage_error("gcd_reciprocal_sum: k must be >= 1");
    if (x > sieve.limit())
        throw usage_error("gcd_reciprocal_sum: x exceeds sieve limit");
    Stopwatch sw;
    // g(d) = prod_{p|d} (1 - p), multiplicative over the squarefree kernel
    std::vector<i64> g(x + 1, 0);
    g[1] = 1;
    for (u64 i = 2; i <= x; ++i) {
        u64 p = sieve.spf(i), m = i / p;
        g[i] = (m % p == 0) ? g[m] : g[m] * (1 - static_cast<i64>(p));
    }
    SumResult res;
    res.request = {SumKind::gcd_reciprocal, k, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = "divisor_sum";
    res.term_count = x;
    if (mode == Mode::exact) {
        if (x > kExactOracleCap)
            throw resource_error("gcd_reciprocal_sum: exact mode capped at x = " +
                                 std::to_string(kExactOracleCap));
        BigInt L = lcm_upto(x);
        BigInt num(0);
        for (u64 d = 1; d <= x; ++d) {
            u64 q = x / d;
            bool ovf = false;
            u64 qk = pow_checked(q, k, &ovf);
            BigInt term = L.div_u64(d);
            if (!ovf) {
                term *= BigInt::from_u64(qk);
            } else {
                for (int i = 0; i < k; ++i) term *= BigInt::from_u64(q);
            }
            term *= g[d];
            num += term;
        }
        res.value = Numeric::exact(Rational(std::move(num), std::move(L)));
    } else {
        NeumaierSum acc;
        for (u64 d = 1; d <= x; ++d) {
            if (g[d] == 0) continue;
            double q = static_cast<double>(x / d);
            double qk = q;
            for (int i = 1; i < k; ++i) qk *= q;
            acc.add(static_cast<double>(g[d]) / static_cast<double>(d) * qk);
        }
        res.value = Numeric::floating(acc.value());
    }
    res.elapsed_ms = sw.ms();
    return res;
}

namespace {

u128 triangular(u64 x) { return static_cast<u128>(x) * (x + 1) / 2; }

} // namespace

SumResult classical_partial_sum(SingleFn fn, u64 x, Mode mode,
                                const SieveTables& sieve) {
    if (x < 1) throw usage_error("classical_partial_sum: x must be >= 1");
    if (x > sieve.limit())
        throw usage_error("classical_partial_sum: x exceeds sieve limit");
    if (x > 10'000'000)
        throw resource_error("classical_partial_sum: envelope is x <= 10^7");
    Stopwatch sw;
    SumResult res;
    res.algorithm_used = "divisor_sieve";
    res.term_count = x;
    SumKind kind = SumKind::classical_G;
    switch (fn) {
        case SingleFn::G: {
            kind = SumKind::classical_G;
            // sum_{n<=x} G(n) = sum_{m<=x} phi(m) * Tri(floor(x/m))
            i128 acc = 0;
            for (u64 m = 1; m <= x; ++m)
                acc += static_cast<i128>(sieve.phi(m)) *
                       static_cast<i128>(triangular(x / m));
            res.value = mode == Mode::exact
                            ? Numeric::exact(Rational::from_integer(BigInt::from_i128(acc)))
                            : Numeric::floating(static_cast<double>(acc));
            break;
        }
        case SingleFn::L: {
            kind = SumKind::classical_L;
            // 2*sumL = Tri(x) + sum_d d^2 phi(d) Tri(floor(x/d))
            i128 acc = static_cast<i128>(triangular(x));
            for (u64 d = 1; d <= x; ++d)
                acc += static_cast<i128>(d) * d * sieve.phi(d) *
                       static_cast<i128>(triangular(x / d));
            if (acc % 2 != 0) throw internal_error("classical L: parity failure");
            acc /= 2;
            res.value = mode == Mode::exact
                            ? Numeric::exact(Rational::from_integer(BigInt::from_i128(acc)))
                            : Numeric::floating(static_cast<double>(acc));
            break;
        }
        case SingleFn::Ginv: {
            kind = SumKind::classical_Ginv;
            if (mode == Mode::exact) {
                if (x > kExactOracleCap)
                    throw resource_error(
                        "classical_Ginv: exact mode capped at x = " +
                        std::to_string(kExactOracleCap));
                BigInt L = lcm_upto(x);
                std::vector<BigInt> A(x + 1);
                for (u64 m = 1; m <= x; ++m) A[m] = A[m - 1] + L.div_u64(m);
                // sum = sum_m phi(m) * H_{floor(x/m)} = sum_m phi(m) A_v / L
                BigInt num(0);
                for (u64 m = 1; m <= x; ++m)
                    num += A[x / m] * BigInt::from_u64(sieve.phi(m));
                res.value = Numeric::exact(Rational(std::move(num), std::move(L)));
            } else {
                NeumaierSum acc;
                double hrun = 0.0;
                u64 vrun = 0;
                for (u64 m = x; m >= 1; --m) {
                    u64 v = x / m;
                    while (vrun < v) {
                        ++vrun;
                        hrun += 1.0 / static_cast<double>(vrun);
                    }
                    acc.add(static_cast<double>(sieve.phi(m)) * hrun);
                }
                res.value = Numeric::floating(acc.value());
            }
            break;
        }
        case SingleFn::Linv: {
            kind = SumKind::classical_Linv;
            return linv_partial_sum(x, mode);
        }
        case SingleFn::F:
            throw usage_error("classical_partial_sum: F has no partial-sum kind");
    }
    res.request = {kind, 2, x, mode, Algo::fast, 0, 0};
    res.elapsed_ms = sw.ms();
    return res;
}

SumResult pair_sum_from_triangular(SingleFn fn, u64 x, Mode mode,
                                   const SieveTables& sieve) {
    Stopwatch sw;
    SumResult partial = classical_partial_sum(fn, x, mode, sieve);
    SumResult res;
    SumKind kind;
    Numeric diag;
    switch (fn) {
        case SingleFn::G:
            kind = SumKind::pair_gcd;
            diag = mode == Mode::exact
                       ? Numeric::exact(Rational::from_integer(BigInt::from_u128(triangular(x))))
                       : Numeric::floating(static_cast<double>(triangular(x)));
            break;
        case SingleFn::L:
            kind = SumKind::pair_lcm;
            diag = mode == Mode::exact
                       ? Numeric::exact(Rational::from_integer(BigInt::from_u128(triangular(x))))
                       : Numeric::floating(static_cast<double>(triangular(x)));
            break;
        case SingleFn::Ginv:
        case SingleFn::Linv:
            kind = fn == SingleFn::Ginv ? SumKind::gcd_reciprocal : SumKind::S;
            diag = harmonic(x, mode);
            break;
        default:
            throw usage_error("pair_sum_from_triangular: unsupported kind");
    }
    if (mode == Mode::exact) {
        Rational v = partial.value.rational() + partial.value.rational() -
                     diag.rational();
        res.value = Numeric::exact(std::move(v));
    } else {
        res.value =
            Numeric::floating(2.0 * partial.value.to_double() - diag.to_double());
    }
    res.request = {kind, 2, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = "pair_triangular(" + partial.algorithm_used + ")";
    res.term_count = partial.term_count;
    res.elapsed_ms = sw.ms();
    return res;
}

// ---------------------------------------------------------------------------
// divisor-grouped fast T2 / U2

namespace {

SumResult weighted_h2_sum(SumKind kind, u64 x, Mode mode, const SieveTables& sieve) {
    if (x > sieve.limit()) throw usage_error("fast T2/U2: x exceeds sieve limit");
    Stopwatch sw;
    SumResult res;
    res.request = {kind, 2, x, mode, Algo::fast, 0, 0};
    res.algorithm_used = "divisor_grouped_h2";
    res.term_count = x;
    auto weight = [&](u64 d) -> i64 {
        return kind == SumKind::T ? static_cast<i64>(sieve.jordan2(d))
                                  : sieve.mobius(d);
    };
    if (mode == Mode::exact) {
        if (x > kExactSingleCap)
            throw resource_error("fast T2/U2: exact mode capped at x = " +
                                 std::to_string(kExactSingleCap));
        BigInt L = lcm_upto(x);
        // A_v = L*H_v at the distinct quotients v = floor(x/d)
        std::vector<BigInt> A_at(x + 1);
        std::vector<bool> needed(x + 1, false);
        for (u64 d = 1; d <= x; ++d) needed[x / d] = true;
        {
            BigInt A(0);
            for (u64 m = 1; m <= x; ++m) {
                A += L.div_u64(m);
                if (needed[m]) A_at[m] = A;
            }
        }
        // numerator over L^4: sum_v A_v^2 * sum_{d in block} w(d) (L/d)^2
        BigInt num(0);
        for (u64 d = 1; d <= x;) {
            u64 v = x / d;
            u64 d_hi = x / v;
            BigInt block(0);
            for (u64 e = d; e <= d_hi; ++e) {
                i64 w = weight(e);
                if (w == 0) continue;
                BigInt t = L.div_u64(e);
                t *= t;
                t *= w;
                block += t;
            }
            if (!block.is_zero()) num += A_at[v] * A_at[v] * block;
            d = d_hi + 1;
        }
        res.value = Numeric::exact(Rational(std::move(num), L * L * L * L));
    } else {
        NeumaierSum acc;
        double hrun = 0.0;
        u64 vrun = 0;
        for (u64 d = x; d >= 1; --d) {
            u64 v = x / d;
            while (vrun < v) {
                ++vrun;
                hrun += 1.0 / static_cast<double>(vrun);
            }
            i64 w = weight(d);
            if (w == 0) continue;
            double dd = static_cast<double>(d);
            acc.add(static_cast<double>(w) / (dd * dd) * hrun * hrun);
        }
        res.value = Numeric::floating(acc.value());
    }
    res.elapsed_ms = sw.ms();
    return res;
}

} // namespace

SumResult fast_T2(u64 x, Mode mode, const SieveTables& sieve) {
    return weighted_h2_sum(SumKind::T, x, mode, sieve);
}

SumResult fast_U2(u64 x, Mode mode, const SieveTables& sieve) {
    return weighted_h2_sum(SumKind::U, x, mode, sieve);
}

double u2_from_s2(const S2Prefix& pre, u64 x, const SieveTables& sieve) {
    if (x > pre.limit() || x > sieve.limit())
        throw usage_error("u2_from_s2: x exceeds prepared limit");
    NeumaierSum acc;
    for (u64 d = 1; d <= x; ++d) {
        int mu = sieve.mobius(d);
        if (mu == 0) continue;
        acc.add(static_cast<double>(mu) / static_cast<double>(d) * pre.s2(x / d));
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// dispatcher

SumResult compute_sum(const SumRequest& req) {
    const SumKind kind = req.kind;
    const bool tuple_kind = kind == SumKind::S || kind == SumKind::T ||
                            kind == SumKind::U || kind == SumKind::V;
    if (tuple_kind && req.k < 2)
        throw usage_error("compute_sum: k must be >= 2 for S/T/U/V");
    auto fill = [&](SumResult r) {
        r.request.kind = kind;
        r.request.k = req.k;
        r.request.mode = req.mode;
        return r;
    };
    if (tuple_kind) {
        bool has_fast = req.k == 2 && kind != SumKind::V;
        Algo algo = req.algorithm;
        if (algo == Algo::auto_) algo = has_fast ? Algo::fast : Algo::oracle;
        if (algo == Algo::fast) {
            if (!has_fast)
                throw usage_error("compute_sum: no fast algorithm for kind " +
                                  sum_kind_name(kind) + " at k = " +
                                  std::to_string(req.k));
            if (kind == SumKind::S) return fill(fast_S2(req.x, req.mode));
            SieveTables sieve = build_sieve(std::max<u64>(req.x, 2));
            return fill(kind == SumKind::T ? fast_T2(req.x, req.mode, sieve)
                                           : fast_U2(req.x, req.mode, sieve));
        }
        return fill(oracle_tuple_sum(kind, req.k, req.x, req.mode, req.threads,
                                     req.tuple_budget));
    }
    SieveTables sieve = build_sieve(std::max<u64>(req.x, 2));
    switch (kind) {
        case SumKind::gcd_power: {
            FunctionTable phi = table_from_spec(MultiplicativeSpec::phi(), req.x, sieve);
            return fill(gcd_kind_sum(phi, req.k, req.x, req.mode));
        }
        case SumKind::gcd_reciprocal:
            return fill(gcd_reciprocal_sum(req.k, req.x, req.mode, sieve));
        case SumKind::classical_G:
            return fill(classical_partial_sum(SingleFn::G, req.x, req.mode, sieve));
        case SumKind::classical_Ginv:
            return fill(classical_partial_sum(SingleFn::Ginv, req.x, req.mode, sieve));
        case SumKind::classical_L:
            return fill(classical_partial_sum(SingleFn::L, req.x, req.mode, sieve));
        case SumKind::classical_Linv:
            return fill(classical_partial_sum(SingleFn::Linv, req.x, req.mode, sieve));
        case SumKind::pair_gcd:
            return fill(pair_sum_from_triangular(SingleFn::G, req.x, req.mode, sieve));
        case SumKind::pair_lcm:
            return fill(pair_sum_from_triangular(SingleFn::L, req.x, req.mode, sieve));
        default:
            throw usage_error("compute_sum: unhandled kind");
    }
}

} // namespace glsums

#include "glsums/asym.hpp"

#include "glsums/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace glsums {

// ---------------------------------------------------------------------------
// main terms

double main_term(const MainTermSpec& spec, double x) {
    if (x < 2) throw usage_error("main_term: x must be >= 2");
    const Constants& c = constants();
    const double lg = std::log(x);
    switch (spec.id) {
        case MainFormula::G_asymp:
            return x * x / (2 * c.zeta2) *
                   (lg + 2 * c.gamma - 0.5 - c.zetaprime2 / c.zeta2);
        case MainFormula::G_minus_1:
            return c.zeta3 / (2 * c.zeta2) * x * x;
        case MainFormula::asympt_L:
            return c.zeta3 / (8 * c.zeta2) * x * x * x * x;
        case MainFormula::gcd_m_n:
            return x * x / c.zeta2 *
                   (lg + 2 * c.gamma - 0.5 - c.zeta2 / 2 - c.zetaprime2 / c.zeta2);
        case MainFormula::gcd_recipr_m_n:
            return c.zeta3 / c.zeta2 * x * x;
        case MainFormula::lcm_m_n:
            return c.zeta3 / (4 * c.zeta2) * x * x * x * x;
        case MainFormula::T_k_main:
            if (!spec.beta_k)
                throw usage_error("main_term: T_k_main requires a computed beta_k");
            return *spec.beta_k * x;
        case MainFormula::gcd_recipr_k:
            if (spec.k < 2) throw usage_error("main_term: k must be >= 2");
            return zeta_em(spec.k + 1) / zeta_em(spec.k) * std::pow(x, spec.k);
    }
    throw usage_error("main_term: unknown formula");
}

// ---------------------------------------------------------------------------
// Euler products

namespace {

std::vector<u64> primes_upto(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> primes;
    for (u64 p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 q = p * p; q <= n; q += p) composite[q] = true;
    }
    return primes;
}

} // namespace

EulerProductResult euler_product_Cf(const MultiplicativeSpec& spec, int K,
                                    u64 prime_limit) {
    if (prime_limit < 100) throw usage_error("euler_product_Cf: prime limit too small");
    std::vector<u64> primes = primes_upto(prime_limit);
    for (u64 p : primes) {
        if (p > 100) break;
        if (spec.rule(p, 1) != K)
            throw usage_error("euler_product_Cf: rule(p,1) != K at p = " +
                              std::to_string(p));
    }
    double product = 1.0;
    for (u64 p : primes) {
        double inv_p = 1.0 / static_cast<double>(p);
        double series = 1.0, term = 1.0, pw = 1.0;
        unsigned nu = 1;
        for (; nu <= 200; ++nu) {
            pw *= inv_p;
            term = static_cast<double>(spec.rule(p, nu)) * pw;
            series += term;
            if (std::abs(term) < 1e-18 * std::abs(series)) break;
        }
        if (nu > 200)
            throw convergence_error("euler_product_Cf: nu-series did not converge at p = " +
                                    std::to_string(p));
        product *= std::pow(1.0 - inv_p, K) * series;
    }
    EulerProductResult out;
    out.value = product;
    out.prime_limit = prime_limit;
    // second-order coefficient of the per-prime log factor drives the tail
    double c2 = std::abs(static_cast<double>(spec.rule(2, 2)) -
                         0.5 * K * (K + 1));
    double P = static_cast<double>(prime_limit);
    out.tail_estimate = 3.0 * std::max(1.0, c2) / (P * std::log(P));
    return out;
}

namespace {

// sorted exponent tuples nu_1 >= ... >= nu_{k-1} >= nu_k = 0 with
// multinomial weights; shared across primes
struct HTuple {
    double exponent_coeff; // max + eps * sum
    double weight;
};

} // namespace

EulerProductResult euler_product_H(int k, double eps, u64 prime_limit) {
    if (k < 2 || k > 6) throw usage_error("euler_product_H: k in [2,6]");
    if (!(eps > 0.0) || eps > 1.0)
        throw usage_error("euler_product_H: eps must be in (0, 1]");
    if (prime_limit < 1000)
        throw usage_error("euler_product_H: prime limit must be >= 10^3");
    constexpr unsigned kMaxNu = 40;
    // Enumerate sorted tuples nu_1 >= ... >= nu_k with nu_k = 0 once; weight
    // is the number of distinct permutations of the multiset.
    std::vector<double> fact(k + 1, 1.0);
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
    std::vector<HTuple> tuples;
    std::vector<unsigned> cur(k, 0);
    // recursive lambda over positions 1..k-1 (position 0 is the max,
    // position k-1 pinned to 0)
    auto emit = [&](const std::vector<unsigned>& t) {
        double sum = 0;
        for (unsigned v : t) sum += v;
        double weight = fact[k];
        std::size_t i = 0;
        while (i < t.size()) {
            std::size_t j = i;
            while (j < t.size() && t[j] == t[i]) ++j;
            weight /= fact[j - i];
            i = j;
        }
        tuples.push_back({t[0] + eps * sum, weight});
    };
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k - 1) {
            cur[pos] = 0;
            emit(cur);
            return;
        }
        for (unsigned v = 0; v <= cur[pos - 1]; ++v) {
            cur[pos] = v;
            self(self, pos + 1);
        }
    };
    for (unsigned top = 0; top <= kMaxNu; ++top) {
        cur[0] = top;
        if (k == 1) break;
        rec(rec, 1);
    }
    std::sort(tuples.begin(), tuples.end(),
              [](const HTuple& a, const HTuple& b) {
                  return a.exponent_coeff < b.exponent_coeff;
              });

    std::vector<u64> primes = primes_upto(prime_limit);
    double log_product = 0.0;
    for (u64 p : primes) {
        double lp = std::log(static_cast<double>(p));
        double local = 0.0;
        for (const HTuple& t : tuples) {
            double term = t.weight * std::exp(-t.exponent_coeff * lp);
            local += term;
            if (term < 1e-18 * local) break;
        }
        if (!(local >= 1.0))
            throw internal_error("euler_product_H: local factor < 1");
        log_product += std::log(local);
    }
    EulerProductResult out;
    out.value = std::exp(log_product);
    out.prime_limit = prime_limit;
    double P = static_cast<double>(prime_limit);
    out.tail_estimate = (std::pow(2.0, k) - 2.0) * std::pow(P, -eps) /
                        (eps * std::log(P));
    return out;
}

// ---------------------------------------------------------------------------
// partial sums, sandwich, relations

Numeric partial_sum_over_n(const FunctionTable& f, u64 x, Mode mode) {
    if (x > f.limit) throw usage_error("partial_sum_over_n: x exceeds table");
    if (mode == Mode::exact) {
        if (x > kExactOracleCap)
            throw resource_error("partial_sum_over_n: exact mode capped at x = " +
                                 std::to_string(kExactOracleCap));
        BigInt L = lcm_upto(x);
        BigInt num(0);
        for (u64 n = 1; n <= x; ++n) {
            BigInt t = L.div_u64(n);
            t *= f.values[n];
            num += t;
        }
        return Numeric::exact(Rational(std::move(num), std::move(L)));
    }
    NeumaierSum acc;
    for (u64 n = 1; n <= x; ++n)
        acc.add(static_cast<double>(f.values[n]) / static_cast<double>(n));
    return Numeric::floating(acc.value());
}

SandwichReport sandwich_check(SumKind kind, int k, u64 x, u64 budget) {
    if (kind != SumKind::S && kind != SumKind::U)
        throw usage_error("sandwich_check: kind must be S or U");
    if (budget == 0) budget = default_tuple_budget();
    if (k < 2 || x < 1) throw usage_error("sandwich_check: k >= 2, x >= 1");
    u64 X = 1;
    for (int i = 0; i < k; ++i) {
        if (X > 200'000'000 / std::max<u64>(x, 1))
            throw resource_error("sandwich_check: x^k exceeds the sieve budget 2*10^8");
        X *= x;
    }
    if (X > 200'000'000)
        throw resource_error("sandwich_check: x^k exceeds the sieve budget 2*10^8");
    MultiplicativeSpec c = kind == SumKind::S ? MultiplicativeSpec::a_k(k)
                                              : MultiplicativeSpec::b_k(k);
    check_rule_overflow(c, k, X);
    SieveTables sieve = build_sieve(std::max<u64>(X, 2));
    FunctionTable table = table_from_spec(c, X, sieve);

    SandwichReport rep;
    rep.value = oracle_tuple_sum(kind, k, x, Mode::exact, 0, budget).value.rational();
    rep.lower = partial_sum_over_n(table, x, Mode::exact).rational();
    // certified lower bound on the upper sum: per-term floor(c(n) 2^32 / n)
    u128 scaled = 0;
    for (u64 n = 1; n <= X; ++n) {
        i64 v = table.values[n];
        if (v < 0) throw internal_error("sandwich_check: negative table value");
        scaled += (static_cast<u128>(v) << 32) / n;
    }
    rep.upper_cert = Rational(BigInt::from_u128(scaled), BigInt(1) << 32);
    rep.upper = rep.upper_cert.to_double();
    rep.pass = rep.lower <= rep.value && rep.value <= rep.upper_cert;
    return rep;
}

std::string relation_name(Relation rel) {
    switch (rel) {
        case Relation::S_from_U: return "S_from_U";
        case Relation::U_from_S: return "U_from_S";
        case Relation::T_from_U: return "T_from_U";
        case Relation::U_from_T: return "U_from_T";
    }
    return "?";
}

RelationReport relation_check(Relation rel, int k, u64 x, u64 budget) {
    if (k >= 3 && x > 50)
        throw resource_error("relation_check: x capped at 50 for k >= 3");
    if (x > kExactOracleCap)
        throw resource_error("relation_check: exact mode caps x at 600");
    std::map<u64, Rational> memo_s, memo_t, memo_u;
    auto oracle = [&](SumKind kind, u64 y) -> const Rational& {
        auto& memo = kind == SumKind::S ? memo_s
                     : kind == SumKind::T ? memo_t : memo_u;
        auto it = memo.find(y);
        if (it == memo.end())
            it = memo.emplace(y, oracle_tuple_sum(kind, k, y, Mode::exact, 0, budget)
                                     .value.rational())
                     .first;
        return it->second;
    };
    std::vector<int> mobius(x + 1, 0);
    {
        SieveTables sv = build_sieve(std::max<u64>(x, 2));
        for (u64 d = 1; d <= x; ++d) mobius[d] = sv.mobius(d);
    }
    RelationReport rep;
    rep.relation = rel;
    rep.k = k;
    rep.x = x;
    Rational rhs(0);
    switch (rel) {
        case Relation::S_from_U:
            for (u64 d = 1; d <= x; ++d)
                rhs += Rational(BigInt(1), BigInt::from_u64(d)) * oracle(SumKind::U, x / d);
            rep.lhs = oracle(SumKind::S, x);
            break;
        case Relation::U_from_S:
            for (u64 d = 1; d <= x; ++d) {
                if (mobius[d] == 0) continue;
                rhs += Rational(BigInt(mobius[d]), BigInt::from_u64(d)) *
                       oracle(SumKind::S, x / d);
            }
            rep.lhs = oracle(SumKind::U, x);
            break;
        case Relation::T_from_U:
            for (u64 d = 1; d <= x; ++d) rhs += oracle(SumKind::U, x / d);
            rep.lhs = oracle(SumKind::T, x);
            break;
        case Relation::U_from_T:
            for (u64 d = 1; d <= x; ++d) {
                if (mobius[d] == 0) continue;
                rhs += Rational(BigInt(mobius[d]), BigInt(1)) * oracle(SumKind::T, x / d);
            }
            rep.lhs = oracle(SumKind::U, x);
            break;
    }
    rep.rhs = std::move(rhs);
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// beta_k

BetaResult beta_k(int k, u64 N, std::optional<double> eps_opt, u64 budget) {
    if (k < 2 || k > 4) throw usage_error("beta_k: k in {2,3,4}");
    if (N < 8) throw usage_error("beta_k: truncation too small");
    if (budget == 0) budget = default_tuple_budget();
    {
        // sorted-tuple count ~ N^k / k!
        double est = std::pow(static_cast<double>(N), k);
        for (int i = 2; i <= k; ++i) est /= i;
        if (est > static_cast<double>(budget))
            throw resource_error("beta_k: enumeration exceeds the tuple budget");
    }
    double fact[5] = {1, 1, 2, 6, 24};
    NeumaierSum acc;
    BetaResult out;
    out.truncation = N;
    const u64 n_quarter = N / 4, n_half = N / 2;
    // outer index a = max of the sorted tuple, ascending so the partial sums
    // at N/4 and N/2 fall out of the same pass
    std::vector<u64> vals(k, 0);
    for (u64 a = 1; a <= N; ++a) {
        vals[0] = a;
        // enumerate non-increasing tails vals[1..k-1] <= a, tracking gcd/lcm
        auto rec = [&](auto&& self, int pos, u64 g, u64 l) -> void {
            if (pos == k) {
                if (g != 1) return;
                // multinomial weight of the multiset
                double w = fact[k];
                int run = 1;
                for (int i = 1; i < k; ++i) {
                    if (vals[i] == vals[i - 1]) {
                        ++run;
                    } else {
                        w /= fact[run];
                        run = 1;
                    }
                }
                w /= fact[run];
                acc.add(w / (static_cast<double>(l) * static_cast<double>(a)));
                return;
            }
            for (u64 v = 1; v <= vals[pos - 1]; ++v) {
                vals[pos] = v;
                self(self, pos + 1, std::gcd(g, v), l / std::gcd(l, v) * v);
            }
        };
        rec(rec, 1, a, a);
        if (a == n_quarter) out.value_quarter = acc.value();
        if (a == n_half) out.value_half = acc.value();
    }
    out.value = acc.value();

    // tail heuristic: deficit model c (log N)^(2^k-2) / N where the model is
    // already decreasing, geometric increment extrapolation otherwise
    const int e = (1 << k) - 2;
    auto model = [&](double n) { return std::pow(std::log(n), e) / n; };
    double dN = model(static_cast<double>(N)), dH = model(static_cast<double>(n_half));
    double delta1 = out.value - out.value_half;
    double delta0 = out.value_half - out.value_quarter;
    if (dH > dN && delta1 > 0) {
        out.tail_estimate = delta1 / (dH - dN) * dN;
    } else if (delta0 > 0 && delta1 > 0 && delta1 < 0.95 * delta0) {
        double rho = delta1 / delta0;
        out.tail_estimate = delta1 * rho / (1.0 - rho);
    } else {
        out.tail_estimate = delta1 * 10.0; // pre-asymptotic; crude and labeled
    }

    double eps = eps_opt.value_or(1.0 / std::log(static_cast<double>(N)));
    EulerProductResult h = euler_product_H(k, eps / k, 10'000);
    out.order_bound = k * std::pow(static_cast<double>(N), eps - 1.0) * h.value;
    return out;
}

EulerSumResult euler_sum_check(u64 n) {
    if (n < 1) throw usage_error("euler_sum_check: N must be >= 1");
    NeumaierSum acc;
    double hrun = 0.0;
    for (u64 m = 1; m <= n; ++m) {
        hrun += 1.0 / static_cast<double>(m);
        acc.add(hrun / (static_cast<double>(m) * static_cast<double>(m)));
    }
    EulerSumResult out;
    out.value = acc.value();
    out.error_vs_2zeta3 = out.value - 2.0 * constants().zeta3;
    return out;
}

// ---------------------------------------------------------------------------
// least-squares fit in log x

FitReport fit_log_polynomial(const std::vector<std::pair<double, double>>& samples,
                             int degree, double condition_threshold) {
    const int m = static_cast<int>(samples.size());
    const int n = degree + 1;
    if (degree < 0) throw usage_error("fit: degree must be >= 0");
    if (m < degree + 2)
        throw usage_error("fit: need at least degree + 2 samples");
    double tmin = 1e300, tmax = -1e300;
    for (auto& [x, y] : samples) {
        if (!(x > 0)) throw usage_error("fit: sample x must be positive");
        tmin = std::min(tmin, std::log(x));
        tmax = std::max(tmax, std::log(x));
    }
    if (tmax - tmin < 3.0)
        throw usage_error("fit: samples must span a log-range >= 3");

    long double tbar = 0;
    for (auto& [x, y] : samples) tbar += std::log(static_cast<long double>(x));
    tbar /= m;

    // shifted Vandermonde columns, modified Gram-Schmidt
    std::vector<std::vector<long double>> A(n, std::vector<long double>(m));
    for (int i = 0; i < m; ++i) {
        long double t = std::log(static_cast<long double>(samples[i].first)) - tbar;
        long double pw = 1;
        for (int j = 0; j < n; ++j) {
            A[j][i] = pw;
            pw *= t;
        }
    }
    std::vector<std::vector<long double>> Q = A;
    std::vector<std::vector<long double>> R(n, std::vector<long double>(n, 0));
    std::vector<long double> colnorm(n, 0);
    for (int j = 0; j < n; ++j) {
        long double nn = 0;
        for (int i = 0; i < m; ++i) nn += A[j][i] * A[j][i];
        colnorm[j] = std::sqrt(nn);
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            long double dot = 0;
            for (int r = 0; r < m; ++r) dot += Q[i][r] * Q[j][r];
            R[i][j] = dot;
            for (int r = 0; r < m; ++r) Q[j][r] -= dot * Q[i][r];
        }
        long double nn = 0;
        for (int r = 0; r < m; ++r) nn += Q[j][r] * Q[j][r];
        nn = std::sqrt(nn);
        R[j][j] = nn;
        if (nn == 0) throw convergence_error("fit: rank-deficient design matrix");
        for (int r = 0; r < m; ++r) Q[j][r] /= nn;
    }
    // condition diagnostic: column norm vs surviving orthogonal norm
    double condition = 0;
    for (int j = 0; j < n; ++j)
        condition = std::max(condition,
                             static_cast<double>(colnorm[j] / R[j][j]));
    if (condition > condition_threshold)
        throw convergence_error("fit: condition " + std::to_string(condition) +
                                " above threshold");

    std::vector<long double> qty(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            qty[j] += Q[j][i] * static_cast<long double>(samples[i].second);
    std::vector<long double> beta(n, 0); // shifted-basis coefficients
    for (int j = n - 1; j >= 0; --j) {
        long double s = qty[j];
        for (int i = j + 1; i < n; ++i) s -= R[j][i] * beta[i];
        beta[j] = s / R[j][j];
    }

    // expand sum beta_j (t - tbar)^j into powers of t
    std::vector<long double> coef(n, 0);
    std::vector<long double> neg_tbar_pow(n, 1);
    for (int j = 1; j < n; ++j) neg_tbar_pow[j] = neg_tbar_pow[j - 1] * (-tbar);
    for (int j = 0; j < n; ++j) {
        long double binom = 1; // C(j, i)
        for (int i = 0; i <= j; ++i) {
            coef[i] += beta[j] * binom * neg_tbar_pow[j - i];
            binom = binom * (j - i) / (i + 1);
        }
    }

    FitReport rep;
    rep.degree = degree;
    rep.condition = condition;
    rep.coefficients.resize(n);
    for (int j = 0; j < n; ++j) rep.coefficients[j] = static_cast<double>(coef[j]);
    rep.leading = rep.coefficients[degree];
    rep.residuals.resize(m);
    for (int i = 0; i < m; ++i) {
        long double t = std::log(static_cast<long double>(samples[i].first));
        long double p = 0, pw = 1;
        for (int j = 0; j < n; ++j) {
            p += coef[j] * pw;
            pw *= t;
        }
        rep.residuals[i] = static_cast<double>(
            static_cast<long double>(samples[i].second) - p);
    }
    return rep;
}

} // namespace glsums

#include "doctest.h"

#include "glsums/errors.hpp"
#include "glsums/multfun.hpp"

#include <numeric>
#include <random>
#include <vector>

using namespace glsums;

namespace {

// brute-force count of k-tuples with lcm exactly n (optionally coprime),
// enumerating divisor tuples of n
u64 count_lcm_tuples(u64 n, int k, bool coprime) {
    std::vector<u64> divs;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
    u64 count = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        u64 l = 1, g = 0;
        for (int i = 0; i < k; ++i) {
            u64 v = divs[idx[i]];
            l = std::lcm(l, v);
            g = std::gcd(g, v);
        }
        if (l == n && (!coprime || g == 1)) ++count;
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == divs.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return count;
}

} // namespace

TEST_CASE("eval_multiplicative and the built-in rules") {
    SieveTables sv = build_sieve(10'000);
    auto a2 = MultiplicativeSpec::a_k(2);
    auto a3 = MultiplicativeSpec::a_k(3);
    auto b2 = MultiplicativeSpec::b_k(2);
    auto b3 = MultiplicativeSpec::b_k(3);
    CHECK(eval_multiplicative(a2, 6, sv) == 9);
    CHECK(eval_multiplicative(a2, 1, sv) == 1);
    CHECK(eval_multiplicative(a3, 1, sv) == 1);
    // b_k(p) = 2^k - 2 at primes
    for (u64 p : {2, 3, 5, 97}) {
        CHECK(eval_multiplicative(b3, p, sv) == 6);
        CHECK(eval_multiplicative(b2, p, sv) == 2);
    }
    // b_2(p^nu) = 2 for every nu >= 1
    CHECK(eval_multiplicative(b2, 4, sv) == 2);
    CHECK(eval_multiplicative(b2, 8, sv) == 2);
    CHECK_THROWS_AS(eval_multiplicative(a2, 20'000, sv), usage_error);
}

TEST_CASE("table_from_spec matches pointwise evaluation") {
    SieveTables sv = build_sieve(5000);
    for (int k : {2, 3}) {
        FunctionTable t = table_from_spec(MultiplicativeSpec::a_k(k), 5000, sv);
        CHECK(t.values[1] == 1);
        for (u64 n = 1; n <= 5000; ++n)
            CHECK(t.values[n] == eval_multiplicative(MultiplicativeSpec::a_k(k), n, sv));
    }
    // a_3 at primes <= 10 equals 7
    FunctionTable a3 = table_from_spec(MultiplicativeSpec::a_k(3), 10, sv);
    for (u64 p : {2, 3, 5, 7}) CHECK(a3.values[p] == 7);
    // b_2(4) = 9 - 8 + 1 = 2
    FunctionTable b2 = table_from_spec(MultiplicativeSpec::b_k(2), 10, sv);
    CHECK(b2.values[4] == 2);
}

TEST_CASE("dirichlet convolution basics") {
    SieveTables sv = build_sieve(1000);
    FunctionTable one = table_from_spec(MultiplicativeSpec::one(), 1000, sv);
    FunctionTable mu;
    mu.limit = 1000;
    mu.values.assign(1001, 0);
    for (u64 n = 1; n <= 1000; ++n) mu.values[n] = sv.mobius(n);

    FunctionTable e = dirichlet_convolve(mu, one);
    CHECK(e.values[1] == 1);
    for (u64 n = 2; n <= 1000; ++n) CHECK(e.values[n] == 0);

    FunctionTable tau = dirichlet_convolve(one, one);
    for (u64 n = 1; n <= 100; ++n) {
        u64 cnt = 0;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) ++cnt;
        CHECK(tau.values[n] == static_cast<i64>(cnt));
    }

    // (mu * tau^2)(6) = a_2(6) = 9
    FunctionTable tau2 = table_from_spec(MultiplicativeSpec::tau_pow(2), 1000, sv);
    FunctionTable a2 = dirichlet_convolve(mu, tau2);
    CHECK(a2.values[6] == 9);

    FunctionTable other = table_from_spec(MultiplicativeSpec::one(), 500, sv);
    CHECK_THROWS_AS(dirichlet_convolve(one, other), usage_error);
}

TEST_CASE("mobius inversion recovers the convolved factor") {
    SieveTables sv = build_sieve(10'000);
    // F(n) = n -> f = phi
    FunctionTable id = table_from_spec(MultiplicativeSpec::identity(), 10'000, sv);
    FunctionTable phi = mobius_invert(id, sv);
    for (u64 n = 1; n <= 10'000; ++n) CHECK(phi.values[n] == static_cast<i64>(sv.phi(n)));

    for (int k : {2, 3, 4}) {
        FunctionTable tk = table_from_spec(MultiplicativeSpec::tau_pow(k), 10'000, sv);
        FunctionTable ak = mobius_invert(tk, sv);
        FunctionTable ak_direct = table_from_spec(MultiplicativeSpec::a_k(k), 10'000, sv);
        FunctionTable bk = mobius_invert(ak_direct, sv);
        FunctionTable bk_direct = table_from_spec(MultiplicativeSpec::b_k(k), 10'000, sv);
        CHECK(ak.provenance == TableProvenance::inverted);
        for (u64 n = 1; n <= 10'000; ++n) {
            CHECK(ak.values[n] == ak_direct.values[n]);
            CHECK(bk.values[n] == bk_direct.values[n]);
            CHECK(bk.values[n] >= 0);
        }
    }
}

TEST_CASE("a_k / b_k count lcm tuples") {
    SieveTables sv = build_sieve(60);
    for (int k : {2, 3}) {
        FunctionTable ak = table_from_spec(MultiplicativeSpec::a_k(k), 60, sv);
        FunctionTable bk = table_from_spec(MultiplicativeSpec::b_k(k), 60, sv);
        for (u64 n = 1; n <= 60; ++n) {
            CHECK(ak.values[n] == static_cast<i64>(count_lcm_tuples(n, k, false)));
            CHECK(bk.values[n] == static_cast<i64>(count_lcm_tuples(n, k, true)));
        }
    }
}

TEST_CASE("convolution is commutative and associative on random tables") {
    std::vector<unsigned> seeds = {11, 22, 33};
    for (unsigned seed : seeds) {
        std::mt19937_64 rng(seed);
        auto random_table = [&] {
            FunctionTable t;
            t.limit = 500;
            t.values.assign(501, 0);
            for (u64 n = 1; n <= 500; ++n)
                t.values[n] = static_cast<i64>(rng() % 41) - 20;
            return t;
        };
        FunctionTable f = random_table(), g = random_table(), h = random_table();
        FunctionTable fg = dirichlet_convolve(f, g);
        FunctionTable gf = dirichlet_convolve(g, f);
        for (u64 n = 1; n <= 500; ++n) CHECK(fg.values[n] == gf.values[n]);
        FunctionTable left = dirichlet_convolve(dirichlet_convolve(f, g), h);
        FunctionTable right = dirichlet_convolve(f, dirichlet_convolve(g, h));
        for (u64 n = 1; n <= 500; ++n) CHECK(left.values[n] == right.values[n]);
    }
}

TEST_CASE("table export formats") {
    SieveTables sv = build_sieve(5);
    FunctionTable t = table_from_spec(MultiplicativeSpec::a_k(2), 5, sv);
    CHECK(table_to_csv(t) == "n,value\n1,1\n2,3\n3,3\n4,5\n5,3\n");
    CHECK(table_to_json(t) == "[1,3,3,5,3]");
}

TEST_CASE("overflow guard") {
    CHECK_THROWS_AS(MultiplicativeSpec::a_k(40).rule(2, 30), resource_error);
    SieveTables sv = build_sieve(100);
    CHECK_NOTHROW(check_rule_overflow(MultiplicativeSpec::a_k(10), 10, 100'000'000));
    CHECK_THROWS_AS(check_rule_overflow(MultiplicativeSpec::a_k(11), 11, 100), resource_error);
}

#pragma once

// Linear smallest-prime-factor sieve with all multiplicative tables derived
// in the same O(N) pass: mu, phi, tau, omega and the order-2 Jordan totient.
// Immutable after construction; safe to share across threads.

#include "glsums/bigint.hpp"

#include <cstdint>
#include <vector>

namespace glsums {

class SieveTables {
public:
    // ~22 bytes per entry (spf 4, mu 1, phi 4, tau 4, omega 1, jordan2 8).
    static constexpr u64 kDefaultLimitCap = 1'000'000'000;

    explicit SieveTables(u64 limit, u64 limit_cap = kDefaultLimitCap);

    u64 limit() const { return limit_; }
    u64 spf(u64 n) const { return spf_[n]; }
    int mobius(u64 n) const { return mobius_[n]; }
    u64 phi(u64 n) const { return phi_[n]; }
    u64 tau(u64 n) const { return tau_[n]; }
    unsigned omega(u64 n) const { return omega_[n]; }
    u64 jordan2(u64 n) const { return jordan2_[n]; }
    const std::vector<u64>& primes() const { return primes_; }

    bool is_prime(u64 n) const { return n >= 2 && spf_[n] == n; }

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mobius_;
    std::vector<std::uint32_t> phi_;
    std::vector<std::uint32_t> tau_;
    std::vector<std::uint8_t> omega_;
    std::vector<u64> jordan2_;
    std::vector<u64> primes_;
};

SieveTables build_sieve(u64 limit, u64 limit_cap = SieveTables::kDefaultLimitCap);

} // namespace glsums

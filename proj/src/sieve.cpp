#include "glsums/sieve.hpp"

#include "glsums/errors.hpp"

#include <string>

namespace glsums {

SieveTables::SieveTables(u64 limit, u64 limit_cap) : limit_(limit) {
    if (limit < 2) throw usage_error("build_sieve: limit must be >= 2");
    if (limit > limit_cap)
        throw resource_error("build_sieve: limit " + std::to_string(limit) +
                             " exceeds cap " + std::to_string(limit_cap) +
                             " (~22 bytes/entry)");
    const u64 n = limit;
    spf_.assign(n + 1, 0);
    mobius_.assign(n + 1, 0);
    phi_.assign(n + 1, 0);
    tau_.assign(n + 1, 0);
    omega_.assign(n + 1, 0);
    jordan2_.assign(n + 1, 0);
    std::vector<std::uint8_t> cnt(n + 1, 0); // exponent of spf(i) in i

    mobius_[1] = 1;
    phi_[1] = 1;
    tau_[1] = 1;
    jordan2_[1] = 1;

    for (u64 i = 2; i <= n; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes_.push_back(i);
        }
        for (u64 p : primes_) {
            if (p > spf_[i] || i * p > n) break;
            spf_[i * p] = static_cast<std::uint32_t>(p);
        }
        const u64 p = spf_[i];
        const u64 m = i / p;
        if (m % p == 0) { // repeated prime factor
            mobius_[i] = 0;
            phi_[i] = static_cast<std::uint32_t>(phi_[m] * p);
            omega_[i] = omega_[m];
            jordan2_[i] = jordan2_[m] * p * p;
            tau_[i] = static_cast<std::uint32_t>(
                tau_[m] / (cnt[m] + 1u) * (cnt[m] + 2u));
            cnt[i] = static_cast<std::uint8_t>(cnt[m] + 1);
        } else {
            mobius_[i] = static_cast<std::int8_t>(-mobius_[m]);
            phi_[i] = static_cast<std::uint32_t>(phi_[m] * (p - 1));
            omega_[i] = static_cast<std::uint8_t>(omega_[m] + 1);
            jordan2_[i] = jordan2_[m] * (p * p - 1);
            tau_[i] = tau_[m] * 2;
            cnt[i] = 1;
        }
    }
}

SieveTables build_sieve(u64 limit, u64 limit_cap) {
    return SieveTables(limit, limit_cap);
}

} // namespace glsums

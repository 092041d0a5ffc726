#pragma once

// Arbitrary-precision signed integers, base 2^64 sign-magnitude.
// Schoolbook multiplication and Knuth algorithm-D division are plenty for
// the operand sizes this project sees (lcm(1..10^4) is ~226 limbs).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace glsums {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

class BigInt {
public:
    BigInt() = default;
    BigInt(i64 v);
    BigInt(int v) : BigInt(static_cast<i64>(v)) {}
    static BigInt from_u64(u64 v);
    static BigInt from_u128(u128 v);
    static BigInt from_i128(i128 v);
    static BigInt from_decimal(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    int signum() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator*=(i64 rhs);
    BigInt& operator<<=(unsigned bits);
    BigInt& operator>>=(unsigned bits);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator*(BigInt a, i64 b) { return a *= b; }
    friend BigInt operator<<(BigInt a, unsigned bits) { return a <<= bits; }
    friend BigInt operator>>(BigInt a, unsigned bits) { return a >>= bits; }
    BigInt operator-() const;

    // Truncated division; remainder carries the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    // Fast path: divide by a single limb, return quotient, out-param remainder.
    BigInt div_u64(u64 d, u64* rem = nullptr) const;

    static BigInt gcd(BigInt a, BigInt b);

    std::strong_ordering operator<=>(const BigInt& rhs) const;
    bool operator==(const BigInt& rhs) const = default;

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    std::size_t bit_length() const;
    std::string to_string() const;
    double to_double() const;
    // Requires |*this| < 2^63 for i64 / < 2^64 for u64.
    i64 to_i64() const;
    u64 to_u64_abs() const;
    bool fits_i64() const;

private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<u64> mag_;         // little-endian magnitude, no high zero limbs

    void trim();
    static int ucmp(const std::vector<u64>& a, const std::vector<u64>& b);
    static void uadd(std::vector<u64>& a, const std::vector<u64>& b);
    static void usub(std::vector<u64>& a, const std::vector<u64>& b); // a >= b
    static std::vector<u64> umul(const std::vector<u64>& a, const std::vector<u64>& b);
    static void udivmod(const std::vector<u64>& u, const std::vector<u64>& v,
                        std::vector<u64>& q, std::vector<u64>& r);
};

} // namespace glsums

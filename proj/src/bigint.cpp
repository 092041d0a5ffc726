#include "glsums/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace glsums {

namespace {
constexpr u64 DEC_CHUNK = 10'000'000'000'000'000'000ULL; // 10^19
constexpr int DEC_CHUNK_DIGITS = 19;
} // namespace

BigInt::BigInt(i64 v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    u64 a = v > 0 ? static_cast<u64>(v) : ~static_cast<u64>(v) + 1;
    mag_.push_back(a);
}

BigInt BigInt::from_u64(u64 v) {
    BigInt r;
    if (v) {
        r.sign_ = 1;
        r.mag_.push_back(v);
    }
    return r;
}

BigInt BigInt::from_u128(u128 v) {
    BigInt r;
    if (v) {
        r.sign_ = 1;
        r.mag_.push_back(static_cast<u64>(v));
        if (v >> 64) r.mag_.push_back(static_cast<u64>(v >> 64));
    }
    return r;
}

BigInt BigInt::from_i128(i128 v) {
    if (v >= 0) return from_u128(static_cast<u128>(v));
    BigInt r = from_u128(static_cast<u128>(-v));
    r.sign_ = -1;
    return r;
}

BigInt BigInt::from_decimal(std::string_view s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty decimal string");
    BigInt r;
    while (i < s.size()) {
        std::size_t take = std::min<std::size_t>(DEC_CHUNK_DIGITS, s.size() - i);
        u64 chunk = 0, scale = 1;
        for (std::size_t j = 0; j < take; ++j) {
            char c = s[i + j];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
            chunk = chunk * 10 + static_cast<u64>(c - '0');
            scale *= 10; // scale <= 10^19, fits u64
        }
        r *= from_u64(scale);
        r += from_u64(chunk);
        i += take;
    }
    if (neg && !r.is_zero()) r.sign_ = -r.sign_;
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::ucmp(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

void BigInt::uadd(std::vector<u64>& a, const std::vector<u64>& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u128 s = static_cast<u128>(a[i]) + (i < b.size() ? b[i] : 0) + carry;
        a[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (carry) a.push_back(carry);
}

void BigInt::usub(std::vector<u64>& a, const std::vector<u64>& b) {
    u64 borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 bi = i < b.size() ? b[i] : 0;
        u64 ai = a[i];
        u64 d = ai - bi - borrow;
        borrow = (ai < bi + borrow) || (bi + borrow < bi) ? 1 : 0;
        a[i] = d;
    }
    assert(borrow == 0);
}

std::vector<u64> BigInt::umul(const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        u64 carry = 0;
        u128 av = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 cur = av * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        std::size_t k = i + b.size();
        while (carry) {
            u128 cur = static_cast<u128>(r[k]) + carry;
            r[k] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) { *this = rhs; return *this; }
    if (sign_ == rhs.sign_) {
        uadd(mag_, rhs.mag_);
        return *this;
    }
    int c = ucmp(mag_, rhs.mag_);
    if (c == 0) { sign_ = 0; mag_.clear(); return *this; }
    if (c > 0) {
        usub(mag_, rhs.mag_);
    } else {
        std::vector<u64> tmp = rhs.mag_;
        usub(tmp, mag_);
        mag_ = std::move(tmp);
        sign_ = rhs.sign_;
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    BigInt neg = rhs;
    neg.sign_ = -neg.sign_;
    return *this += neg;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_ = BigInt::umul(a.mag_, b.mag_);
    r.trim();
    return r;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
    *this = *this * rhs;
    return *this;
}

BigInt& BigInt::operator*=(i64 rhs) {
    if (rhs == 0 || sign_ == 0) { sign_ = 0; mag_.clear(); return *this; }
    u64 m = rhs > 0 ? static_cast<u64>(rhs) : ~static_cast<u64>(rhs) + 1;
    if (rhs < 0) sign_ = -sign_;
    u64 carry = 0;
    for (auto& limb : mag_) {
        u128 cur = static_cast<u128>(limb) * m + carry;
        limb = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    if (carry) mag_.push_back(carry);
    return *this;
}

BigInt& BigInt::operator<<=(unsigned bits) {
    if (sign_ == 0 || bits == 0) return *this;
    unsigned limbshift = bits / 64, bitshift = bits % 64;
    std::size_t n = mag_.size();
    mag_.resize(n + limbshift + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        u64 hi = bitshift ? (mag_[i] >> (64 - bitshift)) : 0;
        mag_[i + limbshift + 1] |= hi;
        mag_[i + limbshift] = mag_[i] << bitshift;
    }
    for (unsigned i = 0; i < limbshift; ++i) mag_[i] = 0;
    trim();
    return *this;
}

BigInt& BigInt::operator>>=(unsigned bits) {
    if (sign_ == 0 || bits == 0) return *this;
    unsigned limbshift = bits / 64, bitshift = bits % 64;
    if (limbshift >= mag_.size()) { sign_ = 0; mag_.clear(); return *this; }
    mag_.erase(mag_.begin(), mag_.begin() + limbshift);
    if (bitshift) {
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            u64 hi = (i + 1 < mag_.size()) ? (mag_[i + 1] << (64 - bitshift)) : 0;
            mag_[i] = (mag_[i] >> bitshift) | hi;
        }
    }
    trim();
    return *this;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

// Knuth TAOCP 4.3.1 algorithm D, base 2^64.
void BigInt::udivmod(const std::vector<u64>& u_in, const std::vector<u64>& v_in,
                     std::vector<u64>& q, std::vector<u64>& r) {
    const std::size_t n = v_in.size();
    assert(n > 0 && v_in.back() != 0);
    if (ucmp(u_in, v_in) < 0) {
        q.clear();
        r = u_in;
        return;
    }
    if (n == 1) {
        u64 d = v_in[0];
        q.assign(u_in.size(), 0);
        u128 rem = 0;
        for (std::size_t i = u_in.size(); i-- > 0;) {
            u128 cur = (rem << 64) | u_in[i];
            q[i] = static_cast<u64>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<u64>(rem));
        return;
    }
    const int shift = std::countl_zero(v_in.back());
    std::vector<u64> v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = v_in[i] << shift;
        if (shift && i > 0) v[i] |= v_in[i - 1] >> (64 - shift);
    }
    const std::size_t m = u_in.size() - n;
    std::vector<u64> u(u_in.size() + 1, 0);
    for (std::size_t i = u_in.size(); i-- > 0;) {
        u[i] = u_in[i] << shift;
        if (shift && i > 0) u[i] |= u_in[i - 1] >> (64 - shift);
    }
    if (shift) u[u_in.size()] = u_in.back() >> (64 - shift);

    q.assign(m + 1, 0);
    const u64 vtop = v[n - 1], vnext = v[n - 2];
    const u128 BASE = static_cast<u128>(1) << 64;
    for (std::size_t j = m + 1; j-- > 0;) {
        u128 numer = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = numer / vtop;
        u128 rhat = numer % vtop;
        while (qhat >= BASE ||
               qhat * vnext > ((rhat << 64) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >= BASE) break;
        }
        // multiply-subtract qhat*v from u[j .. j+n]
        u128 borrow = 0, carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 prod = qhat * v[i] + carry;
            carry = prod >> 64;
            u64 plo = static_cast<u64>(prod);
            u64 ui = u[j + i];
            u64 diff = ui - plo - static_cast<u64>(borrow);
            borrow = (static_cast<u128>(plo) + static_cast<u64>(borrow) > ui) ? 1 : 0;
            u[j + i] = diff;
        }
        u128 top = static_cast<u128>(u[j + n]) - carry - borrow;
        u[j + n] = static_cast<u64>(top);
        if (top >> 127) { // went negative: add back one v
            --qhat;
            u64 c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 s = static_cast<u128>(u[j + i]) + v[i] + c2;
                u[j + i] = static_cast<u64>(s);
                c2 = static_cast<u64>(s >> 64);
            }
            u[j + n] += c2;
        }
        q[j] = static_cast<u64>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(u.begin(), u.begin() + n);
    if (shift) {
        for (std::size_t i = 0; i < n; ++i) {
            u64 hi = (i + 1 < n) ? (r[i + 1] << (64 - shift)) : 0;
            r[i] = (r[i] >> shift) | hi;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (a.sign_ == 0) { q = BigInt(); r = BigInt(); return; }
    std::vector<u64> qm, rm;
    udivmod(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.mag_ = std::move(rm);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::div_u64(u64 d, u64* rem) const {
    if (d == 0) throw std::domain_error("BigInt: division by zero");
    BigInt q;
    if (sign_ == 0) {
        if (rem) *rem = 0;
        return q;
    }
    q.mag_.assign(mag_.size(), 0);
    u128 r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        u128 cur = (r << 64) | mag_[i];
        q.mag_[i] = static_cast<u64>(cur / d);
        r = cur % d;
    }
    q.sign_ = sign_;
    q.trim();
    if (rem) *rem = static_cast<u64>(r);
    return q;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // binary gcd on magnitudes
    auto tz = [](const BigInt& x) -> unsigned {
        unsigned n = 0;
        for (u64 limb : x.mag_) {
            if (limb == 0) { n += 64; continue; }
            n += static_cast<unsigned>(std::countr_zero(limb));
            break;
        }
        return n;
    };
    unsigned sa = tz(a), sb = tz(b);
    unsigned common = std::min(sa, sb);
    a >>= sa;
    b >>= sb;
    while (true) {
        int c = ucmp(a.mag_, b.mag_);
        if (c == 0) break;
        if (c < 0) std::swap(a, b);
        usub(a.mag_, b.mag_);
        a.trim();
        if (a.is_zero()) { a = b; break; }
        a >>= tz(a);
    }
    return a << common;
}

std::strong_ordering BigInt::operator<=>(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ <=> rhs.sign_;
    int c = ucmp(mag_, rhs.mag_) * sign_;
    return c <=> 0;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    return mag_.size() * 64 - static_cast<std::size_t>(std::countl_zero(mag_.back()));
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<u64> chunks;
    BigInt t = *this;
    t.sign_ = 1;
    while (!t.is_zero()) {
        u64 rem;
        t = t.div_u64(DEC_CHUNK, &rem);
        chunks.push_back(rem);
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out += std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out.append(DEC_CHUNK_DIGITS - part.size(), '0');
        out += part;
    }
    return out;
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    // top 128 bits suffice for correctly-rounded-to-nearest-ish doubles
    std::size_t n = mag_.size();
    double top = 0.0;
    int exponent = 0;
    if (n == 1) {
        top = static_cast<double>(mag_[0]);
    } else {
        u128 hi = (static_cast<u128>(mag_[n - 1]) << 64) | mag_[n - 2];
        // fold in a hint of the next limb for rounding
        double lo_frac = n >= 3 ? static_cast<double>(mag_[n - 3]) * 0x1p-64 : 0.0;
        top = static_cast<double>(static_cast<u64>(hi >> 64)) * 0x1p64 +
              static_cast<double>(static_cast<u64>(hi)) + lo_frac;
        exponent = static_cast<int>((n - 2) * 64);
    }
    return sign_ * std::ldexp(top, exponent);
}

i64 BigInt::to_i64() const {
    if (sign_ == 0) return 0;
    if (mag_.size() > 1 || mag_[0] > (sign_ > 0 ? 0x7fffffffffffffffULL : 0x8000000000000000ULL))
        throw std::overflow_error("BigInt: does not fit i64");
    return sign_ > 0 ? static_cast<i64>(mag_[0]) : -static_cast<i64>(mag_[0] - 1) - 1;
}

u64 BigInt::to_u64_abs() const {
    if (sign_ == 0) return 0;
    if (mag_.size() > 1) throw std::overflow_error("BigInt: does not fit u64");
    return mag_[0];
}

bool BigInt::fits_i64() const {
    if (sign_ == 0) return true;
    return mag_.size() == 1 &&
           mag_[0] <= (sign_ > 0 ? 0x7fffffffffffffffULL : 0x8000000000000000ULL);
}

} // namespace glsums

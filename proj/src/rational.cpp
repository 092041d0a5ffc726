#include "glsums/rational.hpp"

#include "glsums/errors.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace glsums {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ = num_ * rhs.num_;
    den_ = den_ * rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ = num_ * rhs.den_;
    den_ = den_ * rhs.num_;
    reduce();
    return *this;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
    return (num_ * rhs.den_) <=> (rhs.num_ * den_);
}

bool Rational::operator==(const Rational& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    // Scale so the quotient carries ~128 significant bits, then ldexp back.
    long d = static_cast<long>(num_.bit_length()) - static_cast<long>(den_.bit_length());
    long s = 128 - d;
    BigInt q;
    if (s >= 0)
        q = (num_ << static_cast<unsigned>(s)) / den_;
    else
        q = num_ / (den_ << static_cast<unsigned>(-s));
    return std::ldexp(q.to_double(), static_cast<int>(-s));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::abs() const {
    return num_.is_negative() ? -*this : *this;
}

const Rational& Numeric::rational() const {
    if (!is_exact()) throw internal_error("Numeric: float value has no rational form");
    return rat_;
}

std::string Numeric::to_string() const {
    if (is_exact()) return rat_.to_string();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", flt_);
    return buf;
}

} // namespace glsums

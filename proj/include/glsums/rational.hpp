#pragma once

// Exact rationals over BigInt, plus the Numeric value type (exact or binary64)
// and a Neumaier compensated accumulator for the float paths.

#include "glsums/bigint.hpp"

#include <cmath>
#include <compare>
#include <string>

namespace glsums {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);
    static Rational from_integer(BigInt n) { return Rational(std::move(n), BigInt(1)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    std::strong_ordering operator<=>(const Rational& rhs) const;
    bool operator==(const Rational& rhs) const;

    double to_double() const;
    // "n" when the denominator is 1, else "n/d".
    std::string to_string() const;
    Rational abs() const;

private:
    BigInt num_;
    BigInt den_; // > 0, gcd(num, den) == 1
    void reduce();
};

// Neumaier variant of compensated summation; immune to -ffast-math only
// because we never enable it.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const NeumaierSum& other) {
        add(other.sum);
        comp += other.comp;
    }
    double value() const { return sum + comp; }
};

enum class Mode { exact, floating };

// A computed value: exact rational or compensated binary64.
class Numeric {
public:
    Numeric() : mode_(Mode::floating), flt_(0.0) {}
    static Numeric exact(Rational r) {
        Numeric n;
        n.mode_ = Mode::exact;
        n.rat_ = std::move(r);
        return n;
    }
    static Numeric floating(double v) {
        Numeric n;
        n.mode_ = Mode::floating;
        n.flt_ = v;
        return n;
    }

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::exact; }
    const Rational& rational() const;
    double to_double() const { return is_exact() ? rat_.to_double() : flt_; }
    std::string to_string() const;

private:
    Mode mode_;
    Rational rat_;
    double flt_ = 0.0;
};

} // namespace glsums

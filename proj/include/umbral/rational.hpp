#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace umbral {

using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always reduced, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(raw{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational inverse() const {
        if (num_ == 0) throw std::domain_error("Rational: inverse of zero");
        return Rational(raw{}, num_ > 0 ? den_ : -den_, boost::multiprecision::abs(num_));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Largest integer <= value.
    Int floor() const {
        Int q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }
    Int ceil() const { return -(-*this).floor(); }

    /// x - floor(x), in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Parses "p", "-p", "p/q".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Int(s));
        return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }

    double approx() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

private:
    struct raw {};
    Rational(raw, Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        Int g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    Int num_;
    Int den_;
};

/// Half-integers (indices m, theta labels r, y-exponents), stored as num2/2.
struct Half {
    long long num2 = 0;

    Half() = default;
    explicit constexpr Half(long long n2) : num2(n2) {}
    static Half of_int(long long n) { return Half(2 * n); }

    bool is_integer() const { return num2 % 2 == 0; }
    long long as_int() const {
        if (!is_integer()) throw std::domain_error("Half: not an integer");
        return num2 / 2;
    }
    Rational as_rational() const { return Rational(num2, 2); }

    friend Half operator+(Half a, Half b) { return Half(a.num2 + b.num2); }
    friend Half operator-(Half a, Half b) { return Half(a.num2 - b.num2); }
    friend Half operator-(Half a) { return Half(-a.num2); }
    friend Half operator*(long long k, Half a) { return Half(k * a.num2); }
    friend bool operator==(Half a, Half b) { return a.num2 == b.num2; }
    friend bool operator!=(Half a, Half b) { return a.num2 != b.num2; }
    friend bool operator<(Half a, Half b) { return a.num2 < b.num2; }
    friend bool operator<=(Half a, Half b) { return a.num2 <= b.num2; }
    friend bool operator>(Half a, Half b) { return a.num2 > b.num2; }
    friend bool operator>=(Half a, Half b) { return a.num2 >= b.num2; }

    std::string str() const {
        if (is_integer()) return std::to_string(num2 / 2);
        return std::to_string(num2) + "/2";
    }
};

inline long long llgcd(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline long long lllcm(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a / llgcd(a, b) * b;
}

} // namespace umbral

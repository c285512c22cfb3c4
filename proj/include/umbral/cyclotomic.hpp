#pragma once

#include "umbral/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace umbral {

/// Coefficients of Phi_N, the N-th cyclotomic polynomial, ascending degree,
/// computed by iterated exact division of x^N - 1 by Phi_d over proper
/// divisors d. Cached; thread-safe.
const std::vector<Int>& cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

/// Exact element of Q(zeta_N), stored as coordinates in the power basis
/// 1, z, ..., z^{phi(N)-1} of Q[x]/Phi_N(x), always reduced mod Phi_N.
/// Rational values collapse to order 1, so equal numbers at the same order
/// have identical data. Mixed-order arithmetic embeds into the lcm first.
/// Immutable in practice; all operations return new values.
class CycQ {
public:
    CycQ() : order_(1), coords_(1) {}
    explicit CycQ(Rational r) : order_(1), coords_{std::move(r)} {}
    explicit CycQ(long long n) : order_(1), coords_{Rational(n)} {}

    /// e(x) = exp(2 pi i x) as an exact root of unity in Q(zeta_q),
    /// q the reduced denominator of x.
    static CycQ root_of_unity(const Rational& x);

    static CycQ zero() { return CycQ(); }
    static CycQ one() { return CycQ(1); }
    static CycQ imaginary_unit() { return root_of_unity(Rational(1, 4)); }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Requires is_rational().
    const Rational& rational_value() const;

    /// Same number in Q(zeta_{new_order}); rejects new_order not divisible
    /// by order().
    CycQ embedded(unsigned new_order) const;

    CycQ operator-() const;
    friend CycQ operator+(const CycQ& a, const CycQ& b);
    friend CycQ operator-(const CycQ& a, const CycQ& b);
    friend CycQ operator*(const CycQ& a, const CycQ& b);
    CycQ& operator+=(const CycQ& b) { return *this = *this + b; }
    CycQ& operator-=(const CycQ& b) { return *this = *this - b; }
    CycQ& operator*=(const CycQ& b) { return *this = *this * b; }

    CycQ times(const Rational& r) const;

    /// Multiplicative inverse (extended Euclid in Q[x] mod Phi_N).
    CycQ inverse() const;

    /// Complex conjugate, zeta -> zeta^{-1}.
    CycQ conj() const;

    CycQ pow(long long k) const;

    /// True equality of represented complex numbers (embeds to lcm of orders).
    friend bool operator==(const CycQ& a, const CycQ& b);
    friend bool operator!=(const CycQ& a, const CycQ& b) { return !(a == b); }

    std::string str() const;

    /// Debug-only numeric embedding (zeta_N -> exp(2 pi i / N)); no exactness
    /// contract.
    std::complex<double> approx() const;

private:
    struct raw {};
    CycQ(raw, unsigned order, std::vector<Rational> coords)
        : order_(order), coords_(std::move(coords)) {}

    /// Collapse to order 1 when the value is rational.
    void collapse();

    static CycQ from_poly(unsigned order, std::vector<Rational> poly);

    unsigned order_;
    std::vector<Rational> coords_;
};

} // namespace umbral

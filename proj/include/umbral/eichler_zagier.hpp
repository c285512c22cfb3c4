#pragma once

#include "umbral/series.hpp"
#include "umbral/theta.hpp"

#include <map>

namespace umbral {

/// Theta-decomposition consistency failure: the first exponent pair whose
/// coefficient does not match the e(m l) h_r pattern. This is the operational
/// detector that a series is not a holomorphic-type elliptic form.
struct ConsistencyError : std::runtime_error {
    ConsistencyError(const Rational& q, Half y, std::string msg)
        : std::runtime_error(std::move(msg)), qexp(q), yexp(y) {}
    Rational qexp;
    Half yexp;
};

/// m -> m if integral, 2m if half-integral.
long long mtilde(Half m);

std::vector<long long> divisors(long long n);
/// n with n (mt/n) = mt and gcd(n, mt/n) = 1.
std::vector<long long> exact_divisors(long long mt);

/// n -> a(n), the unique element of Z/2mt Z with a(n) = 1 mod 2mt/n and
/// a(n) = -1 mod 2n, for each exact divisor n of mt. A bijection onto
/// O_mt = {a mod 2mt : a^2 = 1 mod 4mt}.
struct ExactDivisorMap {
    long long mt = 1;
    std::map<long long, long long> a; // exact divisor -> a(n) in [0, 2mt)
};
ExactDivisorMap exact_divisor_map(long long mt);

/// O_mt computed directly from its definition (test oracle surface).
std::vector<long long> o_group(long long mt);

/// Product of exact divisors: n * n' / gcd(n,n')^2.
long long exact_divisor_product(long long n, long long np);

/// 2m x 2m zero/one matrix over canonical representatives r, r' with entries
///   delta^[2n]_{r+r',0} delta^[2m/n]_{r-r',0}   (m integral)
///   delta^[n]_{r+r',0}  delta^[2m/n]_{r-r',0}   (m half-integral)
class OmegaMatrix {
public:
    OmegaMatrix(Half m, long long n); // rejects n not dividing mtilde
    Half m() const { return m_; }
    long long n() const { return n_; }
    const std::vector<Half>& reps() const { return reps_; }
    int entry(Half r, Half rp) const;
    bool is_permutation() const;
    /// For permutation matrices: the unique r' with entry(r, r') = 1.
    Half image(Half r) const;

private:
    Half m_;
    long long n_;
    std::vector<Half> reps_;
    std::vector<std::vector<int>> e_;
};

/// Eichler-Zagier operator
///   (phi | W_m(n))(tau,z) = (1/n) sum_{a,b=0}^{n-1}
///     e(m(a^2/n^2 tau + 2a/n z + ab/n^2 + ab + a + b)) phi(tau, z + a/n tau + b/n).
/// Needs a y-complete input (the tau-shifts mix q and y validity). The result
/// window additionally uses the support bound A >= L^2/4m + c0 read off the
/// input, which holds for index-m elliptic-type series; it is exact for the
/// theta functions this operator is verified on.
JacobiSeries ez_operator(const JacobiSeries& phi, Half m, long long n);

/// Theta coefficients {h_r} of an index-m elliptic form, r over canonical
/// representatives. reps_checked counts how many distinct lattice
/// representatives of each class confirmed the same h values.
struct ThetaCoefficients {
    Half m;
    std::map<long long, QSeries> h; // key: doubled r
    std::map<long long, int> reps_checked;
};

/// Reads h_r off phi = sum h_r theta_{m,r}: the coefficient of q^A y^l must
/// equal e(m l) h_r[A - l^2/4m] for l = r mod 2m. Every in-window
/// representative is checked; the first violation raises ConsistencyError.
ThetaCoefficients theta_decompose(const JacobiSeries& phi, Half m);

/// sum_r h_r(tau) theta_{m,r}(tau,z) on the window.
JacobiSeries assemble_from_theta(const ThetaCoefficients& hc, const Window& w);

} // namespace umbral

#pragma once

#include "umbral/series.hpp"

namespace umbral {

/// Index-m theta label: m half-integral, r in Z + m taken mod 2m, canonical
/// representative in (-m, m].
struct ThetaIndex {
    Half m;
    Half r;

    ThetaIndex(Half m_, Half r_);
    /// Canonical representative set {-m+1, ..., m} in integer steps.
    static std::vector<Half> representatives(Half m);
    static Half canonical(Half m, Half r);
};

/// eta(tau) = q^{1/24} prod_{n>0} (1 - q^n), y-independent.
JacobiSeries eta_series(const Window& w);

/// theta_1(tau,z) = -i q^{1/8} y^{1/2} prod (1 - y^{-1}q^{n-1})(1 - yq^n)(1 - q^n)
JacobiSeries theta1_series(const Window& w);

/// theta_2(tau,z) =    q^{1/8} y^{1/2} prod (1 + y^{-1}q^{n-1})(1 + yq^n)(1 - q^n)
JacobiSeries theta2_series(const Window& w);

/// theta_{m,r}(tau,z) = sum over l in Z+m, l = r mod 2m, of e(m l) y^l q^{l^2/4m}.
JacobiSeries theta_mr(const ThetaIndex& idx, const Window& w);

/// theta^1_{m,r}(tau) = (1/2 pi i) d/dz theta_{m,r}|_{z=0}
///                    = sum e(m l) l q^{l^2/4m}, exact term-by-term derivative.
QSeries theta1_mr(const ThetaIndex& idx, const Rational& qmax);

/// Global sign between the two presentations of the classical Jacobi theta:
/// theta_{1/2,1/2} (lattice sum) = sigma * theta_1 (triple product). Measured
/// by coefficient comparison on the given window; throws if the two are not
/// proportional by a constant sign.
int triple_product_sign(const Rational& qmax);

} // namespace umbral

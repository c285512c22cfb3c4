#pragma once

#include "umbral/eichler_zagier.hpp"
#include "umbral/series.hpp"

#include <variant>
#include <vector>

namespace umbral {

/// Floor artifacts of two runs disagree: the truncation depth was too
/// shallow to separate the residue from boundary garbage.
struct StabilisationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The extracted residue function has q-dependence, contradicting the
/// constancy of weight-1 residues.
struct NonConstantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Torsion point z_s = alpha tau + beta.
struct TorsionPoint {
    Rational alpha;
    Rational beta;
};

/// The unique n with s in S_n: joint reduced denominator of (alpha, beta).
long long orbit_index(const TorsionPoint& s);

struct Translate {
    long long lambda = 0;
    long long mu = 0;
};
struct MatrixMove {
    long long a = 1, b = 0, c = 0, d = 1; // det = 1
};
using GroupMove = std::variant<Translate, MatrixMove>;

TorsionPoint apply_move(const TorsionPoint& s, const GroupMove& g);

/// A word of moves in Z^2 x| SL2(Z) sending s to (1/n, 0), built by the
/// transitivity construction: arrange gcd(k, l) = 1 by a translation, then
/// apply (x, -l; y, k) with kx + ly = 1. Replaying the word verifies it.
std::vector<GroupMove> reduce_to_standard(const TorsionPoint& s);

/// R_{m,c} expanded in the |y| > 1 region: sum over l in Z+m, l <= c, with
/// coefficient 1 - (1/2) delta_{l,c}, truncated at the window floor (y-only).
JacobiSeries r_mc(Half m, const Rational& c, const Window& w);

/// Input of the averaging operator, kept as rational-function data so each
/// k-summand can be expanded natively in its own region |q^k y| vs 1.
struct RationalFunctionSpec {
    struct Constant {
        CycQ value;
    };
    /// R_{m,c}(y y_s^{-1}) with z_s = alpha tau + beta.
    struct Rmc {
        Rational c;
        Rational alpha;
        Rational beta;
    };
    std::variant<Constant, Rmc> data;
};

/// Av_m(F(y)) = sum_k (-1)^{2mk} q^{m k^2} y^{2mk} F(q^k y).
JacobiSeries averaging(Half m, const RationalFunctionSpec& F, const Window& w);

/// Plain-series overload: valid only when the window keeps the k-range at
/// {0}; rejected otherwise since region-correct re-expansion of a bare
/// series is not possible.
JacobiSeries averaging(Half m, const JacobiSeries& F, const Window& w);

/// Universal Appell-Lerch sum
///   A^s_m = e(-m alpha z_s) Av_m(R_{m,-2m alpha}(y y_s^{-1})).
JacobiSeries appell_lerch(Half m, const TorsionPoint& s, const Window& w);

/// mu_{m,0} = A^{(0,0)}_m.
JacobiSeries mu_m0(Half m, const Window& w);

struct PolarDatum {
    TorsionPoint point;
    CycQ residue_constant; // D_s
};

/// psi^P = sum_s D_s A^s_m over one representative per Z^2-orbit.
JacobiSeries polar_part(const std::vector<PolarDatum>& data, Half m, const Window& w);

/// D_{(0,0)}: the value at y = 1 of (y^{1/2} - y^{-1/2}) psi, per q-order.
/// Multiplying telescopes each q-slice to its deepest retained coefficient;
/// the q^0 slice yields the residue, all other slices must vanish
/// (NonConstantError otherwise). Stabilisation against floor artifacts is
/// the caller's concern at this level.
CycQ residue_at_origin(const JacobiSeries& psi, Half m);

/// Two-floor form: runs the extraction on both expansions (same object,
/// different y-floors) and requires agreement (StabilisationError).
CycQ residue_at_origin(const JacobiSeries& shallow, const JacobiSeries& deep, Half m);

struct SplitResult {
    JacobiSeries finite;
    JacobiSeries polar;
    ThetaCoefficients coefficients; // of the finite part
};

/// psi = psi^F + psi^P with psi^P from the pole data; the finite part must
/// pass theta decomposition (ConsistencyError signals wrong pole data).
SplitResult split(const JacobiSeries& psi, Half m, const std::vector<PolarDatum>& data);

} // namespace umbral

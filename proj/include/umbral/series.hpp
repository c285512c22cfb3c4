#pragma once

#include "umbral/cyclotomic.hpp"
#include "umbral/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace umbral {

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncation window of an annulus expansion. A series is exact inside its
/// window: every coefficient with q-exponent <= qmax and y-exponent >= yfloor
/// is correct, and nothing exists above ycap for q-orders <= qmax. `ytotal`
/// marks series whose stored support is the complete y-support (no y
/// truncation ever happened); only these admit q^{alpha}-type substitutions.
struct Window {
    Rational qmax;
    Half yfloor;
    Half ycap;
    bool ytotal = false;

    static Window request(Rational qmax, Half yfloor) {
        return Window{std::move(qmax), yfloor, Half(0), false};
    }
};

/// Sparse two-variable series: Puiseux in q (common denominator qden),
/// Laurent in y^{1/2}, coefficients in Q(zeta_N). Keys are (q-exponent
/// numerator at qden, doubled y-exponent); stored coefficients are nonzero.
/// Immutable in practice; operations return new values.
class JacobiSeries {
public:
    using Key = std::pair<long long, long long>; // (qnum at qden, ynum2)
    using TermMap = std::map<Key, CycQ>;

    JacobiSeries() : qden_(1) {}
    explicit JacobiSeries(Window w, long long qden = 1)
        : qden_(qden), window_(std::move(w)) {}

    static JacobiSeries zero(Window w, long long qden = 1) {
        return JacobiSeries(std::move(w), qden);
    }
    static JacobiSeries monomial(const CycQ& c, const Rational& qe, Half ye, Window w);

    long long qden() const { return qden_; }
    const Window& window() const { return window_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational q_of(const Key& k) const { return Rational(k.first, qden_); }
    static Half y_of(const Key& k) { return Half(k.second); }

    /// Same series over a q-denominator multiple of the current one.
    JacobiSeries rescaled(long long new_qden) const;

    JacobiSeries operator-() const;
    friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b);
    friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b);
    friend JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b);

    JacobiSeries times(const CycQ& c) const;
    /// Multiplication by the exact monomial c q^{qe} y^{ye}.
    JacobiSeries monomial_mul(const CycQ& c, const Rational& qe, Half ye) const;

    /// Stored coefficient or zero; rejects queries outside the window
    /// (below yfloor or beyond qmax), where truncated data is not zero.
    const CycQ& coefficient(const Rational& qe, Half ye) const;

    /// Drops terms outside `w` and attaches it (cap/ytotal recomputed
    /// honestly). Used to restrict to a comparison window.
    JacobiSeries restricted(const Window& w) const;

    // support probes
    std::optional<Rational> min_q() const;
    std::optional<Half> min_y_support() const;
    std::optional<Half> max_y_support() const;
    /// Distinct q-exponents present, ascending.
    std::vector<Rational> q_slices() const;
    /// Per-slice y-support range.
    std::optional<std::pair<Half, Half>> y_range_at(const Rational& q) const;
    /// Sum of all in-window coefficients of the slice at q-exponent `q`.
    CycQ slice_sum(const Rational& q) const;

    // internal (used by the builders in this library)
    void set_term(long long qnum, long long ynum2, CycQ c);
    void add_term(long long qnum, long long ynum2, const CycQ& c);
    Window& mutable_window() { return window_; }

private:
    long long qden_;
    Window window_;
    TermMap terms_;
};

struct Mismatch {
    Rational qexp;
    Half yexp;
    CycQ lhs;
    CycQ rhs;
};

/// First differing coefficient of a and b on the intersection window
/// (q <= min qmax, y >= max yfloor), or nullopt if exactly equal there.
std::optional<Mismatch> first_mismatch(const JacobiSeries& a, const JacobiSeries& b);

/// z -> z + alpha tau + beta on the series level: every term c q^A y^L
/// becomes c e(beta L) q^{A + qshift + alpha L} y^L. A tau-shift
/// (alpha != 0) requires a ytotal input; the q-validity of the result
/// shrinks by alpha * yfloor (alpha > 0) or alpha * ycap (alpha < 0).
JacobiSeries substitute(const JacobiSeries& a, const Rational& qshift,
                        const Rational& yphase, const Rational& ypower_qshift);

/// q -> q^{qmult}, y -> y^{ymult} by exponent multiplication.
JacobiSeries scale_variables(const JacobiSeries& a, long long qmult, long long ymult);

/// (1 - c q^{qexp} y^{yexp})^{-1} = sum_k (c q^{qexp} y^{yexp})^k truncated
/// to the window. Rejects qexp = 0 with yexp >= 0: the geometric series
/// converges in the expansion region 0 < -Im(z) < Im(tau) only when each
/// step raises the q-order or lowers the y-exponent.
JacobiSeries geometric_factor(const CycQ& c, const Rational& qexp, Half yexp,
                              const Window& w);

/// One factor (1 - c q^{qexp} y^{yexp})^{+1 or -1} of an infinite product.
struct FactorSpec {
    bool denominator = false;
    CycQ c;
    Rational qexp;
    Half yexp;
};

/// prefactor (coefficient, q-exponent, y-exponent) times the product of the
/// factors, expanded exactly on the requested window. Internally works at a
/// floor deep enough that truncation tails cannot pollute the result.
JacobiSeries product_expand(const CycQ& pre_c, const Rational& pre_q, Half pre_y,
                            const std::vector<FactorSpec>& factors, const Window& w);

/// Pure q-Puiseux series (theta coefficients, H-series, theta1_mr).
struct QSeries {
    long long qden = 1;
    std::map<long long, CycQ> terms; // q-exponent numerator -> coefficient

    QSeries rescaled(long long new_qden) const;
    void add_term(long long qnum, const CycQ& c);
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const QSeries& a, const QSeries& b);
};

std::string to_json(const JacobiSeries& s);
std::string coeff_to_json(const CycQ& c);

} // namespace umbral

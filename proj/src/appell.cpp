#include "umbral/appell.hpp"

#include <algorithm>
#include <cmath>

namespace umbral {

long long orbit_index(const TorsionPoint& s) {
    return lllcm(static_cast<long long>(s.alpha.den()),
                 static_cast<long long>(s.beta.den()));
}

TorsionPoint apply_move(const TorsionPoint& s, const GroupMove& g) {
    if (std::holds_alternative<Translate>(g)) {
        const auto& t = std::get<Translate>(g);
        return {s.alpha + Rational(t.lambda), s.beta + Rational(t.mu)};
    }
    const auto& mv = std::get<MatrixMove>(g);
    return {s.alpha * Rational(mv.a) + s.beta * Rational(mv.c),
            s.alpha * Rational(mv.b) + s.beta * Rational(mv.d)};
}

std::vector<GroupMove> reduce_to_standard(const TorsionPoint& s0) {
    std::vector<GroupMove> word;
    TorsionPoint s = s0;
    long long n = orbit_index(s);
    if (s.alpha == Rational(1, n) && s.beta == Rational(0)) return word;

    long long k = static_cast<long long>((s.alpha * Rational(n)).num());
    long long l = static_cast<long long>((s.beta * Rational(n)).num());
    if (k == 0 && l == 0) { // origin, n = 1
        word.push_back(Translate{1, 0});
        return word;
    }
    if (k == 0) {
        // swap coordinates first: s . (0,-1;1,0) = (beta, -alpha)
        MatrixMove sw{0, -1, 1, 0};
        word.push_back(sw);
        s = apply_move(s, sw);
        k = static_cast<long long>((s.alpha * Rational(n)).num());
        l = static_cast<long long>((s.beta * Rational(n)).num());
    }
    // find j with gcd(k, l + j n) = 1
    long long j = 0;
    for (long long t = 0;; t = (t > 0 ? -t : -t + 1)) {
        if (llgcd(k, l + t * n) == 1) { j = t; break; }
    }
    if (j != 0) {
        word.push_back(Translate{0, j});
        s = apply_move(s, Translate{0, j});
        l += j * n;
    }
    // extended gcd: k x + l y = 1
    long long x = 1, y = 0;
    {
        long long r0 = k, r1 = l, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long r2 = r0 - q * r1, x2 = x0 - q * x1, y2 = y0 - q * y1;
            r0 = r1; r1 = r2;
            x0 = x1; x1 = x2;
            y0 = y1; y1 = y2;
        }
        if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
        if (r0 != 1) throw std::logic_error("reduce_to_standard: gcd(k,l) != 1");
        x = x0;
        y = y0;
    }
    word.push_back(MatrixMove{x, -l, y, k});
    return word;
}

JacobiSeries r_mc(Half m, const Rational& c, const Window& w) {
    JacobiSeries out(w, 1);
    // largest l in Z+m with l <= c (doubled arithmetic)
    Rational c2 = c * Rational(2);
    long long l2 = static_cast<long long>(c2.floor());
    if ((l2 - m.num2) % 2 != 0) --l2;
    for (; Half(l2) >= w.yfloor; l2 -= 2) {
        Rational coeff = (Rational(l2, 2) == c) ? Rational(1, 2) : Rational(1);
        out.add_term(0, l2, CycQ(coeff));
    }
    auto cap = out.max_y_support();
    out.mutable_window().ycap = cap ? *cap : w.yfloor;
    out.mutable_window().ytotal = false; // descending tail truncated at the floor
    return out;
}

namespace {

// One k-summand of Av_m applied to R_{m,c}(y ys^{-1}), zs = alpha tau + beta,
// expanded in its own region: the |w| < 1 branch for k - alpha > 0, the
// |w| > 1 branch otherwise. Formal powers carry the exact phase e(-beta l).
void add_rmc_summand(JacobiSeries& out, Half m, const Rational& c,
                     const Rational& alpha, const Rational& beta, long long k,
                     const Rational& extra_q, const CycQ& extra_coeff) {
    const Window& w = out.window();
    long long den = out.qden();
    Rational kappa = Rational(k) - alpha;
    Rational qbase = m.as_rational() * Rational(k * k) + extra_q;
    long long ybase2 = 2 * m.num2 * k; // doubled value of 2mk
    CycQ base = extra_coeff;
    if ((m.num2 * k) % 2 != 0) base = -base; // (-1)^{2mk}

    // branch start: smallest l >= c (ascending) or largest l <= c (descending)
    bool ascending = kappa > Rational(0);
    Rational c2 = c * Rational(2);
    long long l2;
    if (ascending) {
        l2 = static_cast<long long>(c2.ceil());
        if ((l2 - m.num2) % 2 != 0) ++l2;
    } else {
        l2 = static_cast<long long>(c2.floor());
        if ((l2 - m.num2) % 2 != 0) --l2;
    }
    for (;; l2 += ascending ? 2 : -2) {
        Rational l(l2, 2);
        Rational qe = qbase + kappa * l;
        if (qe > w.qmax) {
            if (ascending) break;
            if (kappa < Rational(0)) break; // descending with kappa < 0: q grows
            continue;                       // kappa == 0: q constant (unreachable here)
        }
        long long y2 = ybase2 + l2;
        if (Half(y2) < w.yfloor) {
            if (!ascending) break;
            continue; // ascending: y grows, later terms come back in range
        }
        Rational weight = (l == c) ? Rational(1, 2) : Rational(1);
        CycQ coeff = base.times(ascending ? -weight : weight);
        coeff = coeff * CycQ::root_of_unity(-beta * l);
        Rational qn = qe * Rational(den);
        if (!qn.is_integer()) throw std::logic_error("averaging: qden mismatch");
        out.add_term(static_cast<long long>(qn.num()), y2, coeff);
    }
}

// Conservative k-range: the minimal q-exponent of the k-summand is
// m k^2 + extra_q + (k - alpha) * (l near c), bounded below by
// m k^2 - (|k| + |alpha| + 1)(|c| + 1) + extra_q.
long long k_bound(Half m, const Rational& c, const Rational& alpha,
                  const Rational& extra_q, const Rational& qmax) {
    auto rabs = [](const Rational& r) { return r < Rational(0) ? -r : r; };
    Rational A = rabs(alpha) + Rational(1);
    Rational C = rabs(c) + Rational(1);
    long long K = 1;
    while (m.as_rational() * Rational(K * K) - (Rational(K) + A) * C + extra_q <=
           qmax)
        ++K;
    return K;
}

} // namespace

JacobiSeries averaging(Half m, const RationalFunctionSpec& F, const Window& w) {
    if (std::holds_alternative<RationalFunctionSpec::Constant>(F.data)) {
        const auto& cst = std::get<RationalFunctionSpec::Constant>(F.data);
        long long den = 2;
        JacobiSeries out(w, den);
        long long K = 0;
        while (m.as_rational() * Rational((K + 1) * (K + 1)) <= w.qmax) ++K;
        for (long long k = -K; k <= K; ++k) {
            Rational qe = m.as_rational() * Rational(k * k);
            CycQ c = cst.value;
            if ((m.num2 * k) % 2 != 0) c = -c;
            Rational qn = qe * Rational(den);
            out.add_term(static_cast<long long>(qn.num()), 2 * m.num2 * k, c);
        }
        auto cap = out.max_y_support();
        out.mutable_window().ycap = cap ? *cap : Half(0);
        out.mutable_window().ytotal = true;
        return out;
    }
    const auto& r = std::get<RationalFunctionSpec::Rmc>(F.data);
    long long da = static_cast<long long>(r.alpha.den());
    long long den = lllcm(2 * da * da, 2 * m.num2 * da);
    JacobiSeries out(w, den);
    long long K = k_bound(m, r.c, r.alpha, Rational(0), w.qmax);
    for (long long k = -K; k <= K; ++k)
        add_rmc_summand(out, m, r.c, r.alpha, r.beta, k, Rational(0), CycQ::one());
    auto cap = out.max_y_support();
    out.mutable_window().ycap = cap ? *cap : Half(0);
    out.mutable_window().ytotal = false;
    return out;
}

JacobiSeries averaging(Half m, const JacobiSeries& F, const Window& w) {
    if (m.as_rational() + Rational(w.yfloor.num2, 2) <= w.qmax)
        throw std::domain_error(
            "averaging: k-range exceeds {0}; supply rational-function data so each "
            "summand can be expanded in its own region");
    return F.restricted(w);
}

JacobiSeries appell_lerch(Half m, const TorsionPoint& s, const Window& w) {
    Rational c = Rational(-2) * m.as_rational() * s.alpha;
    long long da = static_cast<long long>(s.alpha.den());
    long long den = lllcm(2 * da * da, 2 * m.num2 * da);
    JacobiSeries out(w, den);
    // prefactor e(-m alpha z_s) = e(-m alpha beta) q^{-m alpha^2}
    Rational pre_q = -m.as_rational() * s.alpha * s.alpha;
    CycQ pre_c = CycQ::root_of_unity(-m.as_rational() * s.alpha * s.beta);
    long long K = k_bound(m, c, s.alpha, pre_q, w.qmax);
    for (long long k = -K; k <= K; ++k)
        add_rmc_summand(out, m, c, s.alpha, s.beta, k, pre_q, pre_c);
    auto cap = out.max_y_support();
    out.mutable_window().ycap = cap ? *cap : Half(0);
    out.mutable_window().ytotal = false;
    return out;
}

JacobiSeries mu_m0(Half m, const Window& w) {
    return appell_lerch(m, TorsionPoint{Rational(0), Rational(0)}, w);
}

JacobiSeries polar_part(const std::vector<PolarDatum>& data, Half m, const Window& w) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            Rational da = data[i].point.alpha - data[j].point.alpha;
            Rational db = data[i].point.beta - data[j].point.beta;
            if (da.is_integer() && db.is_integer())
                throw std::domain_error(
                    "polar_part: two listed points lie in the same Z^2 orbit");
        }
    }
    JacobiSeries acc = JacobiSeries::zero(w);
    bool first = true;
    for (const auto& d : data) {
        JacobiSeries part = appell_lerch(m, d.point, w).times(d.residue_constant);
        if (first) {
            acc = part;
            first = false;
        } else {
            acc = acc + part;
        }
    }
    return acc;
}

CycQ residue_at_origin(const JacobiSeries& psi, Half m) {
    (void)m;
    // multiplier y^{1/2} - y^{-1/2}
    Window mw{psi.window().qmax, Half(-1), Half(1), true};
    JacobiSeries mult(mw, 1);
    mult.add_term(0, 1, CycQ::one());
    mult.add_term(0, -1, -CycQ::one());
    JacobiSeries prod = psi * mult;

    CycQ d0;
    for (const Rational& q : prod.q_slices()) {
        CycQ v = prod.slice_sum(q);
        if (q == Rational(0)) {
            d0 = v;
        } else if (!v.is_zero()) {
            throw NonConstantError(
                "residue_at_origin: q-dependence detected at q-exponent " + q.str() +
                " (weight-1 residues must be constant)");
        }
    }
    return d0;
}

CycQ residue_at_origin(const JacobiSeries& shallow, const JacobiSeries& deep, Half m) {
    if (deep.window().yfloor >= shallow.window().yfloor)
        throw std::domain_error("residue_at_origin: second expansion must use a "
                                "strictly lower floor");
    CycQ a = residue_at_origin(shallow, m);
    CycQ b = residue_at_origin(deep, m);
    if (!(a == b))
        throw StabilisationError(
            "residue_at_origin: floor artifacts disagree between the two truncation "
            "depths (" + a.str() + " vs " + b.str() + ")");
    return a;
}

SplitResult split(const JacobiSeries& psi, Half m, const std::vector<PolarDatum>& data) {
    Window w = psi.window();
    SplitResult res{JacobiSeries::zero(w), JacobiSeries::zero(w), {}};
    res.polar = polar_part(data, m, Window::request(w.qmax, w.yfloor));
    res.finite = psi - res.polar;
    res.coefficients = theta_decompose(res.finite, m);
    return res;
}

} // namespace umbral

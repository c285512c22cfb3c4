#include "umbral/eichler_zagier.hpp"

#include <algorithm>
#include <numeric>

namespace umbral {

long long mtilde(Half m) {
    if (m.num2 <= 0) throw std::domain_error("mtilde: m must be positive");
    return m.is_integer() ? m.as_int() : m.num2;
}

std::vector<long long> divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::vector<long long> exact_divisors(long long mt) {
    std::vector<long long> out;
    for (long long d : divisors(mt))
        if (llgcd(d, mt / d) == 1) out.push_back(d);
    return out;
}

namespace {

long long mod_inverse(long long a, long long m) {
    long long t0 = 0, t1 = 1, r0 = m, r1 = ((a % m) + m) % m;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        long long t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::logic_error("mod_inverse: not invertible");
    return ((t0 % m) + m) % m;
}

// x = r1 mod m1, x = r2 mod m2 for gcd(m1,m2) | r1 - r2; result mod lcm.
long long crt(long long r1, long long m1, long long r2, long long m2) {
    long long g = llgcd(m1, m2);
    if (((r1 - r2) % g + g) % g != 0)
        throw std::logic_error("crt: incompatible congruences");
    long long l = m1 / g * m2;
    long long m2g = m2 / g;
    if (m2g == 1) return ((r1 % l) + l) % l;
    long long t = ((r2 - r1) / g) % m2g;
    t = (t * mod_inverse(m1 / g, m2g)) % m2g;
    t = ((t % m2g) + m2g) % m2g;
    long long x = (r1 + m1 * t) % l;
    return (x + l) % l;
}

} // namespace

ExactDivisorMap exact_divisor_map(long long mt) {
    if (mt < 1) throw std::domain_error("exact_divisor_map: mtilde must be positive");
    ExactDivisorMap out;
    out.mt = mt;
    for (long long n : exact_divisors(mt))
        out.a[n] = crt(1, 2 * (mt / n), -1 + 2 * n, 2 * n);
    return out;
}

std::vector<long long> o_group(long long mt) {
    std::vector<long long> out;
    for (long long a = 0; a < 2 * mt; ++a)
        if ((a * a) % (4 * mt) == 1 % (4 * mt)) out.push_back(a);
    return out;
}

long long exact_divisor_product(long long n, long long np) {
    long long g = llgcd(n, np);
    return n / g * (np / g);
}

OmegaMatrix::OmegaMatrix(Half m, long long n) : m_(m), n_(n) {
    long long mt = mtilde(m);
    if (n < 1 || mt % n != 0)
        throw std::domain_error("OmegaMatrix: n must divide mtilde");
    reps_ = ThetaIndex::representatives(m);
    long long two_m_over_n = m.num2 / n; // value of 2m/n, integral since n | mtilde
    e_.assign(reps_.size(), std::vector<int>(reps_.size(), 0));
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        for (std::size_t j = 0; j < reps_.size(); ++j) {
            long long sum = (reps_[i].num2 + reps_[j].num2) / 2;  // r + r', integer
            long long diff = (reps_[i].num2 - reps_[j].num2) / 2; // r - r', integer
            long long mod1 = m.is_integer() ? 2 * n : n;
            bool c1 = ((sum % mod1) + mod1) % mod1 == 0;
            bool c2 = ((diff % two_m_over_n) + two_m_over_n) % two_m_over_n == 0;
            e_[i][j] = (c1 && c2) ? 1 : 0;
        }
    }
}

int OmegaMatrix::entry(Half r, Half rp) const {
    Half cr = ThetaIndex::canonical(m_, r);
    Half crp = ThetaIndex::canonical(m_, rp);
    auto idx = [&](Half x) {
        for (std::size_t i = 0; i < reps_.size(); ++i)
            if (reps_[i] == x) return i;
        throw std::logic_error("OmegaMatrix: label outside representative set");
    };
    return e_[idx(cr)][idx(crp)];
}

bool OmegaMatrix::is_permutation() const {
    for (std::size_t i = 0; i < e_.size(); ++i) {
        int rs = 0, cs = 0;
        for (std::size_t j = 0; j < e_.size(); ++j) {
            rs += e_[i][j];
            cs += e_[j][i];
        }
        if (rs != 1 || cs != 1) return false;
    }
    return true;
}

Half OmegaMatrix::image(Half r) const {
    for (const auto& rp : reps_)
        if (entry(r, rp) == 1) return rp;
    throw std::logic_error("OmegaMatrix::image: empty row");
}

JacobiSeries ez_operator(const JacobiSeries& phi, Half m, long long n) {
    long long mt = mtilde(m);
    if (n < 1 || mt % n != 0)
        throw std::domain_error("ez_operator: n must divide mtilde");
    if (n == 1) return phi;
    if (!phi.window().ytotal)
        throw WindowError("ez_operator: input must carry complete y-support");

    // support bound A >= L^2/4m + c0 of the input, used to cap pollution from
    // beyond the input's q-window (exact for theta series)
    Rational c0(0);
    bool have_c0 = false;
    for (const auto& [k, c] : phi.terms()) {
        Rational A(k.first, phi.qden());
        Rational l(k.second, 2);
        Rational gap = A - l * l / (Rational(4) * m.as_rational());
        if (!have_c0 || gap < c0) {
            c0 = gap;
            have_c0 = true;
        }
    }

    JacobiSeries acc;
    bool first = true;
    Rational result_qmax;
    for (long long a = 0; a < n; ++a) {
        for (long long b = 0; b < n; ++b) {
            Rational alpha(a, n);
            Rational beta(b, n);
            JacobiSeries term = substitute(phi, Rational(0), beta, alpha);
            // e(m(a^2/n^2 tau + 2 a/n z)) is the monomial q^{m a^2/n^2} y^{2 m a/n}
            Rational qsh = m.as_rational() * Rational(a * a, n * n);
            long long ysh_num2 = 2 * m.num2 * a / n; // 2m a/n is an integer here
            CycQ phase = CycQ::root_of_unity(
                m.as_rational() * (Rational(a * b, n * n) + Rational(a * b + a + b)));
            term = term.monomial_mul(phase, qsh, Half(ysh_num2));
            if (a > 0 && have_c0) {
                // parabola cap: a missing source term at (A0, L0), L0 < yfloor,
                // A0 >= L0^2/4m + c0 lands at or above (yfloor - 1 + 2m a/n)^2/4m + c0
                Rational fl = Rational(phi.window().yfloor.num2, 2) - Rational(1) +
                              Rational(2) * m.as_rational() * alpha;
                Rational bound = fl * fl / (Rational(4) * m.as_rational()) + c0;
                Window tw = term.window();
                tw.qmax = std::min(tw.qmax, bound - Rational(1, term.qden()));
                term = term.restricted(tw);
            }
            if (first) {
                acc = term;
                result_qmax = term.window().qmax;
                first = false;
            } else {
                result_qmax = std::min(result_qmax, term.window().qmax);
                acc = acc + term;
            }
        }
    }
    acc = acc.times(CycQ(Rational(1, n)));
    if (acc.window().qmax < Rational(0))
        throw WindowError("ez_operator: output window is empty (q-order loss from "
                          "tau-shifts exceeded the input window)");
    return acc;
}

ThetaCoefficients theta_decompose(const JacobiSeries& phi, Half m) {
    if (m.num2 <= 0) throw std::domain_error("theta_decompose: m must be positive");
    auto reps = ThetaIndex::representatives(m);
    if (phi.window().yfloor > reps.front() || phi.window().ycap < reps.back())
        throw std::domain_error(
            "theta_decompose: window must contain the canonical representatives");

    // ellipticity of the (0,1) action: y-support inside Z + m
    for (const auto& [k, c] : phi.terms()) {
        if ((k.second - m.num2) % 2 != 0)
            throw ConsistencyError(Rational(k.first, phi.qden()), Half(k.second),
                                   "theta_decompose: y-support escapes Z + m");
    }

    long long hden = lllcm(phi.qden(), 8 * m.num2);
    JacobiSeries src = phi.rescaled(hden);
    Rational m4 = Rational(4) * m.as_rational();

    ThetaCoefficients out;
    out.m = m;
    auto slot_q = [&](long long d_num, Half l) {
        // d + l^2/4m at denominator hden
        return Rational(d_num, hden) + l.as_rational() * l.as_rational() / m4;
    };

    // read h_r from the canonical representative l = r
    for (Half r : reps) {
        QSeries h;
        h.qden = hden;
        Rational r2_over_4m = r.as_rational() * r.as_rational() / m4;
        CycQ inv_phase = CycQ::root_of_unity(-m.as_rational() * r.as_rational());
        for (const auto& [k, c] : src.terms()) {
            if (k.second != r.num2) continue;
            Rational d = Rational(k.first, hden) - r2_over_4m;
            Rational dn = d * Rational(hden);
            h.add_term(static_cast<long long>(dn.num()), c * inv_phase);
        }
        out.h[r.num2] = std::move(h);
        out.reps_checked[r.num2] = 0;
    }

    // verify every in-window exponent against the pattern, counting
    // representatives per class
    for (Half r : reps) {
        const QSeries& h = out.h[r.num2];
        std::vector<long long> class_l2;
        for (long long l2 = r.num2; l2 >= phi.window().yfloor.num2; l2 -= 2 * m.num2)
            if (l2 <= phi.window().ycap.num2) class_l2.push_back(l2);
        for (long long l2 = r.num2 + 2 * m.num2; l2 <= phi.window().ycap.num2;
             l2 += 2 * m.num2)
            if (l2 >= phi.window().yfloor.num2) class_l2.push_back(l2);

        for (long long l2 : class_l2) {
            bool used = false;
            CycQ phase = CycQ::root_of_unity(m.as_rational() * Rational(l2, 2));
            // h-driven slots must carry exactly e(m l) h_r[d]
            for (const auto& [dn, hv] : h.terms) {
                Rational q = slot_q(dn, Half(l2));
                if (q > phi.window().qmax) continue;
                used = true;
                if (!(src.coefficient(q, Half(l2)) == phase * hv))
                    throw ConsistencyError(q, Half(l2),
                                           "theta_decompose: coefficient violates the "
                                           "theta pattern");
            }
            // stored terms at this l must all be h-driven
            for (const auto& [k, c] : src.terms()) {
                if (k.second != l2) continue;
                Rational d =
                    Rational(k.first, hden) - Rational(l2, 2) * Rational(l2, 2) / m4;
                Rational dn = d * Rational(hden);
                if (!dn.is_integer())
                    throw ConsistencyError(Rational(k.first, hden), Half(l2),
                                           "theta_decompose: q-exponent off the theta "
                                           "lattice");
                used = true;
                if (h.terms.find(static_cast<long long>(dn.num())) == h.terms.end())
                    throw ConsistencyError(Rational(k.first, hden), Half(l2),
                                           "theta_decompose: stray coefficient not "
                                           "matched by any h value");
            }
            if (used) ++out.reps_checked[r.num2];
        }
    }
    return out;
}

JacobiSeries assemble_from_theta(const ThetaCoefficients& hc, const Window& w) {
    JacobiSeries acc = JacobiSeries::zero(w);
    bool first = true;
    for (const auto& [r2, h] : hc.h) {
        JacobiSeries hs(Window{w.qmax, Half(0), Half(0), true}, h.qden);
        for (const auto& [qn, c] : h.terms) hs.add_term(qn, 0, c);
        JacobiSeries t = theta_mr(ThetaIndex(hc.m, Half(r2)), w);
        JacobiSeries part = hs * t;
        if (first) {
            acc = part;
            first = false;
        } else {
            acc = acc + part;
        }
    }
    return acc.restricted(w);
}

} // namespace umbral

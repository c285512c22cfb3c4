#include "umbral/theta.hpp"

#include <stdexcept>

namespace umbral {

ThetaIndex::ThetaIndex(Half m_, Half r_) : m(m_), r(canonical(m_, r_)) {
    if (m.num2 <= 0) throw std::domain_error("ThetaIndex: index m must be positive");
}

Half ThetaIndex::canonical(Half m, Half r) {
    if ((r.num2 - m.num2) % 2 != 0)
        throw std::domain_error("ThetaIndex: r must lie in Z + m");
    long long step = 2 * m.num2; // doubled value of 2m
    long long v = r.num2 % step;
    while (v <= -m.num2) v += step;
    while (v > m.num2) v -= step;
    return Half(v);
}

std::vector<Half> ThetaIndex::representatives(Half m) {
    std::vector<Half> out;
    for (long long v = -m.num2 + 2; v <= m.num2; v += 2) out.push_back(Half(v));
    return out;
}

JacobiSeries eta_series(const Window& w) {
    std::vector<FactorSpec> fs;
    long long nmax = static_cast<long long>(w.qmax.floor()) + 1;
    for (long long n = 1; n <= nmax; ++n)
        fs.push_back({false, CycQ::one(), Rational(n), Half(0)});
    return product_expand(CycQ::one(), Rational(1, 24), Half(0), fs, w);
}

namespace {

JacobiSeries theta_product(const Window& w, const CycQ& pre, const CycQ& sign) {
    std::vector<FactorSpec> fs;
    long long nmax = static_cast<long long>(w.qmax.floor()) + 1;
    for (long long n = 1; n <= nmax; ++n) {
        fs.push_back({false, sign, Rational(n - 1), Half(-2)}); // (1 -+ y^{-1} q^{n-1})
        fs.push_back({false, sign, Rational(n), Half(2)});      // (1 -+ y q^n)
        fs.push_back({false, CycQ::one(), Rational(n), Half(0)});
    }
    return product_expand(pre, Rational(1, 8), Half(1), fs, w);
}

} // namespace

JacobiSeries theta1_series(const Window& w) {
    return theta_product(w, -CycQ::imaginary_unit(), CycQ::one());
}

JacobiSeries theta2_series(const Window& w) {
    return theta_product(w, CycQ::one(), -CycQ::one());
}

JacobiSeries theta_mr(const ThetaIndex& idx, const Window& w) {
    const Half m = idx.m;
    // l^2/4m = l2^2 / (8 m2) with l2 = 2l, m2 = 2m
    long long qden = 8 * m.num2;
    JacobiSeries out(w, qden);
    Window& win = out.mutable_window();
    win.ycap = w.yfloor;
    win.ytotal = true;

    auto qexp_num = [&](long long l2) { return l2 * l2; }; // at denominator 8*m2
    long long qmax_num =
        static_cast<long long>((w.qmax * Rational(qden)).floor());

    bool any = false;
    for (int dir : {+1, -1}) {
        long long k = (dir == +1) ? 0 : -1;
        while (true) {
            long long l2 = idx.r.num2 + 2 * m.num2 * k;
            if (qexp_num(l2) > qmax_num) break;
            if (Half(l2) < w.yfloor) {
                if (dir == -1) win.ytotal = false; // truncated tail below floor
                break;
            }
            CycQ c = CycQ::root_of_unity(m.as_rational() * Rational(l2, 2));
            out.add_term(qexp_num(l2), l2, c);
            win.ycap = std::max(win.ycap, Half(l2));
            any = true;
            k += dir;
        }
    }
    if (!any) win.ycap = w.yfloor;
    return out;
}

QSeries theta1_mr(const ThetaIndex& idx, const Rational& qmax) {
    const Half m = idx.m;
    QSeries out;
    out.qden = 8 * m.num2;
    long long qmax_num = static_cast<long long>((qmax * Rational(out.qden)).floor());
    for (int dir : {+1, -1}) {
        long long k = (dir == +1) ? 0 : -1;
        while (true) {
            long long l2 = idx.r.num2 + 2 * m.num2 * k;
            if (l2 * l2 > qmax_num) break;
            CycQ c = CycQ::root_of_unity(m.as_rational() * Rational(l2, 2));
            out.add_term(l2 * l2, c.times(Rational(l2, 2)));
            k += dir;
        }
    }
    return out;
}

int triple_product_sign(const Rational& qmax) {
    // y-support of theta_{1/2,1/2} up to qmax: l^2/2 <= qmax
    long long bound = 2;
    while (Rational(bound * bound, 8) <= qmax) bound += 2;
    Window w{qmax, Half(-bound), Half(bound), false};
    JacobiSeries sum_form = theta_mr(ThetaIndex(Half(1), Half(1)), w);
    JacobiSeries prod_form = theta1_series(w);
    if (!first_mismatch(sum_form, prod_form))
        return +1;
    if (!first_mismatch(sum_form, -prod_form))
        return -1;
    throw std::logic_error("triple_product_sign: presentations differ by more than a sign");
}

} // namespace umbral

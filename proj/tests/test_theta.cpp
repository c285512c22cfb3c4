#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "umbral/theta.hpp"

using namespace umbral;

namespace {

Window req(const Rational& qmax, long long yfloor2) {
    return Window::request(qmax, Half(yfloor2));
}

// (-1)^j at the generalized pentagonal numbers j(3j-1)/2, else 0
long long pentagonal_coefficient(long long k) {
    for (long long j = -60; j <= 60; ++j)
        if (j * (3 * j - 1) / 2 == k) return (j % 2 == 0) ? 1 : -1;
    return 0;
}

} // namespace

TEST_CASE("eta: leading coefficients and the pentagonal-number oracle") {
    JacobiSeries e = eta_series(req(Rational(12), 0));
    CHECK(e.coefficient(Rational(1, 24), Half(0)) == CycQ::one());
    CHECK(e.coefficient(Rational(25, 24), Half(0)) == -CycQ::one());
    CHECK(e.coefficient(Rational(73, 24), Half(0)).is_zero()); // 3 + 1/24
    for (long long k = 0; k <= 11; ++k) {
        CHECK(e.coefficient(Rational(24 * k + 1, 24), Half(0)) ==
              CycQ(Rational(pentagonal_coefficient(k))));
    }
}

TEST_CASE("theta1/theta2 prefactor coefficients") {
    Window w = req(Rational(4), -12);
    JacobiSeries t1 = theta1_series(w);
    JacobiSeries t2 = theta2_series(w);
    CycQ i = CycQ::imaginary_unit();
    CHECK(t1.coefficient(Rational(1, 8), Half(1)) == -i);
    // expanding (1 - y^{-1}) against the prefactor
    CHECK(t1.coefficient(Rational(1, 8), Half(-1)) == i);
    CHECK(t2.coefficient(Rational(1, 8), Half(1)) == CycQ::one());
    CHECK(t2.coefficient(Rational(1, 8), Half(-1)) == CycQ::one());
}

TEST_CASE("theta_mr: phases, minimal exponents, support classes") {
    Window w = req(Rational(6), -20);
    JacobiSeries t = theta_mr(ThetaIndex(Half(1), Half(1)), w);
    CHECK(t.coefficient(Rational(1, 8), Half(1)) == CycQ::imaginary_unit());

    JacobiSeries t55 = theta_mr(ThetaIndex(Half(5), Half(5)), w);
    CHECK(*t55.min_q() == Rational(5, 8));

    for (Half m : {Half(5), Half(4), Half(7)}) {
        for (Half r : ThetaIndex::representatives(m)) {
            JacobiSeries s = theta_mr(ThetaIndex(m, r), w);
            for (const auto& [k, c] : s.terms()) {
                long long step = 2 * m.num2;
                long long diff = k.second - r.num2;
                CHECK(((diff % step) + step) % step == 0);
            }
        }
    }
}

TEST_CASE("theta1_mr: exact term-by-term derivative") {
    // (1/2,1/2): l = 1/2 and -1/2 terms combine to i q^{1/8}
    QSeries d = theta1_mr(ThetaIndex(Half(1), Half(1)), Rational(4));
    auto it = d.terms.find(d.qden / 8);
    REQUIRE(it != d.terms.end());
    CHECK(it->second == CycQ::imaginary_unit());

    // theta^1_{m,0} = 0 for integral m: +-l pairs with equal phase cancel
    QSeries z = theta1_mr(ThetaIndex(Half(2), Half(0)), Rational(9));
    CHECK(z.is_zero());

    // only q-powers l^2/4m appear
    QSeries d2 = theta1_mr(ThetaIndex(Half(5), Half(3)), Rational(6));
    for (const auto& [qn, c] : d2.terms) {
        // q = l^2/10 with l = 3/2 mod 5: qn/qden * 40 must be an odd square
        Rational q(qn, d2.qden);
        Rational l2sq = q * Rational(10); // (l)^2
        CHECK((l2sq * Rational(4)).is_integer());
    }
}

TEST_CASE("triple product: the two presentations differ by the recorded sign") {
    int sigma = triple_product_sign(Rational(10));
    CHECK(sigma == -1);
}

TEST_CASE("elliptic (0,1)-invariance: theta y-support lies in Z + m") {
    Window w = req(Rational(5), -20);
    for (Half m : {Half(1), Half(5), Half(4)}) {
        for (Half r : ThetaIndex::representatives(m)) {
            JacobiSeries s = theta_mr(ThetaIndex(m, r), w);
            for (const auto& [k, c] : s.terms())
                CHECK((k.second - m.num2) % 2 == 0);
        }
    }
}

TEST_CASE("elliptic (1,0)-shift relation for theta_mr via substitute") {
    // applying z -> z + tau then multiplying by e(m) q^m y^{2m} reproduces the
    // series: c(a', l') = e(m) c(a' - l' + m, l' - 2m) on the window overlap
    for (Half m : {Half(1), Half(5)}) {
        Window w = req(Rational(16), -30);
        ThetaIndex idx(m, m);
        JacobiSeries t = theta_mr(idx, w);
        JacobiSeries shifted = substitute(t, Rational(0), Rational(0), Rational(1));
        JacobiSeries lhs = shifted.monomial_mul(CycQ::root_of_unity(m.as_rational()),
                                                m.as_rational(), Half(2 * m.num2));
        CHECK(lhs.window().qmax >= Rational(2));
        CHECK(!first_mismatch(lhs, t));
    }
}

TEST_CASE("eta^3 has integer coefficients after the q^{1/8} prefactor") {
    Window w = req(Rational(9), 0);
    JacobiSeries e = eta_series(w);
    JacobiSeries e3 = (e * e) * e;
    for (const auto& [k, c] : e3.terms()) {
        Rational q = Rational(k.first, e3.qden()) - Rational(1, 8);
        CHECK(q.is_integer());
        REQUIRE(c.is_rational());
        CHECK(c.rational_value().is_integer());
    }
    // leading terms of the cube: 1 - 3q + 5q^3 - 7q^6 (odd numbers at triangular numbers)
    CHECK(e3.coefficient(Rational(1, 8), Half(0)) == CycQ::one());
    CHECK(e3.coefficient(Rational(1, 8) + Rational(1), Half(0)) == CycQ(Rational(-3)));
    CHECK(e3.coefficient(Rational(1, 8) + Rational(3), Half(0)) == CycQ(Rational(5)));
    CHECK(e3.coefficient(Rational(1, 8) + Rational(6), Half(0)) == CycQ(Rational(-7)));
}

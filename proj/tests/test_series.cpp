#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "umbral/series.hpp"

#include <random>

using namespace umbral;

namespace {

JacobiSeries mono(long long c, const Rational& q, Half y, const Window& w) {
    return JacobiSeries::monomial(CycQ(Rational(c)), q, y, w);
}

Window req(long long qmax, long long yfloor2) {
    return Window::request(Rational(qmax), Half(yfloor2));
}

} // namespace

TEST_CASE("add: identity, cancellation, overlap") {
    Window w = req(4, -8);
    JacobiSeries a = mono(3, Rational(1), Half(2), w);
    CHECK(!first_mismatch(a + JacobiSeries::zero(w), a));

    JacobiSeries b = mono(2, Rational(0), Half(-1), w);  // 2 y^{-1/2}
    JacobiSeries c = mono(-2, Rational(0), Half(-1), w);
    CHECK((b + c).is_zero());

    // (1 + yq) + (1 - yq) = 2
    JacobiSeries one = mono(1, Rational(0), Half(0), w);
    JacobiSeries yq = mono(1, Rational(1), Half(2), w);
    JacobiSeries s = (one + yq) + (one - yq);
    CHECK(s.term_count() == 1);
    CHECK(s.coefficient(Rational(0), Half(0)) == CycQ(Rational(2)));
}

TEST_CASE("mul: unit, monomial inverses, telescoping against a truncated tower") {
    Window w = req(4, -10);
    JacobiSeries a = mono(5, Rational(2), Half(1), w) + mono(7, Rational(0), Half(-3), w);
    JacobiSeries one = mono(1, Rational(0), Half(0), w);
    CHECK(!first_mismatch(a * one, a));

    CHECK((mono(1, Rational(0), Half(1), w) * mono(1, Rational(0), Half(-1), w))
              .coefficient(Rational(0), Half(0)) == CycQ::one());

    // (sum_{j>=0} y^{-j} at floor -5) * (1 - y^{-1}): telescopes to 1; the
    // boundary artifact at y^{-6} falls outside the sound result window
    Window wf = req(0, -10);
    JacobiSeries tower = geometric_factor(CycQ::one(), Rational(0), Half(-2),
                                          Window::request(Rational(0), Half(-10)));
    JacobiSeries bin = mono(1, Rational(0), Half(0), wf) - mono(1, Rational(0), Half(-2), wf);
    JacobiSeries prod = tower * bin;
    CHECK(prod.window().yfloor == Half(-10)); // floor_a + supcap_b
    CHECK(prod.term_count() == 1);
    CHECK(prod.coefficient(Rational(0), Half(0)) == CycQ::one());
}

TEST_CASE("geometric_factor: region and examples") {
    Window w = req(5, -10);
    JacobiSeries g = geometric_factor(CycQ::one(), Rational(1), Half(0), w);
    for (long long k = 0; k <= 5; ++k)
        CHECK(g.coefficient(Rational(k), Half(0)) == CycQ::one());

    // lambda-bar powers descending in y
    CycQ lam = CycQ::root_of_unity(Rational(1, 3));
    JacobiSeries gy = geometric_factor(lam, Rational(0), Half(-2), w);
    CHECK(gy.coefficient(Rational(0), Half(-4)) == lam * lam);
    CHECK(!gy.window().ytotal);

    JacobiSeries gyq = geometric_factor(CycQ::one(), Rational(1), Half(2), w);
    CHECK(gyq.coefficient(Rational(3), Half(6)) == CycQ::one());

    CHECK_THROWS_AS(geometric_factor(CycQ::one(), Rational(0), Half(0), w),
                    std::domain_error);
    CHECK_THROWS_AS(geometric_factor(CycQ::one(), Rational(0), Half(2), w),
                    std::domain_error);
}

TEST_CASE("product_expand: prefactor only, pentagonal numbers, single denominator") {
    Window w = req(5, -10);
    JacobiSeries pre = product_expand(CycQ(Rational(2)), Rational(0), Half(-1), {}, w);
    CHECK(pre.term_count() == 1);
    CHECK(pre.coefficient(Rational(0), Half(-1)) == CycQ(Rational(2)));

    // prod (1 - q^n) to qmax 5 = 1 - q - q^2 + q^5: direct multiplication oracle
    std::vector<FactorSpec> fs;
    for (long long n = 1; n <= 6; ++n)
        fs.push_back({false, CycQ::one(), Rational(n), Half(0)});
    JacobiSeries euler = product_expand(CycQ::one(), Rational(0), Half(0), fs, w);
    std::vector<long long> brute(6, 0);
    brute[0] = 1;
    for (long long n = 1; n <= 6; ++n) {
        std::vector<long long> next = brute;
        for (long long k = 0; k + n <= 5; ++k) next[k + n] -= brute[k];
        brute = next;
    }
    for (long long k = 0; k <= 5; ++k)
        CHECK(euler.coefficient(Rational(k), Half(0)) == CycQ(Rational(brute[k])));

    JacobiSeries den = product_expand(CycQ::one(), Rational(0), Half(0),
                                      {{true, CycQ::one(), Rational(1), Half(2)}}, w);
    for (long long k = 0; k <= 5; ++k)
        CHECK(den.coefficient(Rational(k), Half(2 * k)) == CycQ::one());
}

TEST_CASE("product_expand is independent of factor ordering") {
    Window w = req(6, -14);
    std::vector<FactorSpec> fs = {
        {false, CycQ::root_of_unity(Rational(1, 4)), Rational(1), Half(2)},
        {true, CycQ::one(), Rational(0), Half(-2)},
        {true, CycQ::root_of_unity(Rational(1, 3)), Rational(2), Half(4)},
        {false, CycQ::one(), Rational(1), Half(-4)},
        {true, CycQ::one(), Rational(1), Half(0)},
    };
    JacobiSeries base = product_expand(CycQ::one(), Rational(0), Half(1), fs, w);
    std::mt19937 rng(3);
    for (int t = 0; t < 5; ++t) {
        std::shuffle(fs.begin(), fs.end(), rng);
        JacobiSeries other = product_expand(CycQ::one(), Rational(0), Half(1), fs, w);
        CHECK(!first_mismatch(base, other));
        CHECK(base.terms() == other.terms());
    }
}

TEST_CASE("substitute: identity, phases, round trip") {
    Window w = req(6, -12);
    std::vector<FactorSpec> fs = {{false, CycQ::one(), Rational(1), Half(2)},
                                  {false, CycQ::one(), Rational(2), Half(-2)}};
    JacobiSeries a = product_expand(CycQ::one(), Rational(0), Half(1), fs, w);

    CHECK(!first_mismatch(substitute(a, Rational(0), Rational(0), Rational(0)), a));

    // beta = 1/2 on y^{1/2} gives e(1/4) y^{1/2}
    JacobiSeries half = JacobiSeries::monomial(CycQ::one(), Rational(0), Half(1),
                                               Window{Rational(2), Half(0), Half(1), true});
    JacobiSeries shifted = substitute(half, Rational(0), Rational(1, 2), Rational(0));
    CHECK(shifted.coefficient(Rational(0), Half(1)) == CycQ::imaginary_unit());

    // tau-shift round trip on the shrunken common window
    JacobiSeries fwd = substitute(a, Rational(0), Rational(1, 3), Rational(1, 2));
    JacobiSeries back = substitute(fwd, Rational(0), Rational(-1, 3), Rational(-1, 2));
    CHECK(back.window().qmax < a.window().qmax);
    CHECK(!first_mismatch(back, a));
}

TEST_CASE("substitute rejects tau-shifts of y-truncated series") {
    JacobiSeries g = geometric_factor(CycQ::one(), Rational(0), Half(-2), req(3, -10));
    CHECK_THROWS_AS(substitute(g, Rational(0), Rational(0), Rational(1, 2)),
                    WindowError);
}

TEST_CASE("scale_variables") {
    Window w = req(6, -12);
    JacobiSeries a = JacobiSeries::monomial(CycQ::one(), Rational(1, 8), Half(1), w);
    CHECK(!first_mismatch(scale_variables(a, 1, 1), a));
    JacobiSeries d = scale_variables(a, 3, 2);
    CHECK(d.coefficient(Rational(3, 8), Half(2)) == CycQ::one());
}

TEST_CASE("coefficient: zero reads inside, rejection outside") {
    Window w = req(3, -6);
    JacobiSeries z = JacobiSeries::zero(w);
    CHECK(z.coefficient(Rational(2), Half(-3)).is_zero());
    CHECK_THROWS_AS(z.coefficient(Rational(2), Half(-7)), WindowError);
    CHECK_THROWS_AS(z.coefficient(Rational(4), Half(0)), WindowError);
}

TEST_CASE("ring axioms on random small series") {
    std::mt19937 rng(17);
    Window w = req(4, -8);
    auto rnd = [&]() {
        JacobiSeries s = JacobiSeries::zero(w, 2);
        for (int t = 0; t < 4; ++t) {
            long long q = rng() % 6;           // at den 2
            long long y2 = (rng() % 9) - 4;
            long long c = (rng() % 7) - 3;
            if (c) s.add_term(q, y2, CycQ(Rational(c)));
        }
        return s;
    };
    for (int t = 0; t < 30; ++t) {
        JacobiSeries a = rnd(), b = rnd(), c = rnd();
        CHECK(!first_mismatch((a * b) * c, a * (b * c)));
        CHECK(!first_mismatch(a * (b + c), a * b + a * c));
        CHECK(!first_mismatch(a * b, b * a));
    }
}

TEST_CASE("mul window rule is sound against deeper truncations") {
    // the same object expanded at two floors: coefficients inside the shallow
    // product's declared window must agree with the deeper computation
    std::mt19937 rng(23);
    for (int t = 0; t < 10; ++t) {
        Window shallow = req(3, -8);
        Window deep = req(3, -30);
        auto build = [&](const Window& w, long long salt) {
            std::mt19937 r2(100 + salt);
            JacobiSeries s =
                geometric_factor(CycQ::one(), Rational(0), Half(-2), w);
            JacobiSeries p = JacobiSeries::zero(w, 1);
            for (int k = 0; k < 3; ++k)
                p.add_term(r2() % 3, (r2() % 7) - 3, CycQ(Rational(1 + r2() % 3)));
            return s * p;
        };
        long long salt = rng() % 1000;
        JacobiSeries a_sh = build(shallow, salt);
        JacobiSeries a_dp = build(deep, salt);
        JacobiSeries b = JacobiSeries::zero(shallow, 1);
        b.add_term(1, 2, CycQ(Rational(2)));
        b.add_term(0, -2, CycQ(Rational(3)));
        b.mutable_window().ycap = Half(2);
        JacobiSeries prod_sh = a_sh * b;
        JacobiSeries prod_dp = a_dp * b;
        // every declared coefficient of the shallow product matches the deep one
        for (const auto& [k, c] : prod_sh.terms()) {
            CHECK(prod_dp.coefficient(Rational(k.first, prod_sh.qden()), Half(k.second)) == c);
        }
        for (const auto& [k, c] : prod_dp.terms()) {
            if (Half(k.second) < prod_sh.window().yfloor) continue;
            if (Rational(k.first, prod_dp.qden()) > prod_sh.window().qmax) continue;
            CHECK(prod_sh.coefficient(Rational(k.first, prod_dp.qden()), Half(k.second)) == c);
        }
    }
}

TEST_CASE("json term stream is sorted by q ascending, y descending") {
    Window w = req(2, -4);
    JacobiSeries s = JacobiSeries::zero(w, 1);
    s.add_term(0, -2, CycQ(Rational(1)));
    s.add_term(0, 2, CycQ(Rational(2)));
    s.add_term(1, 0, CycQ(Rational(3)));
    std::string j = to_json(s);
    auto p1 = j.find("\"y2\": 2");
    auto p2 = j.find("\"y2\": -2");
    auto p3 = j.find("\"q\": \"1\"");
    CHECK(p1 != std::string::npos);
    CHECK(p1 < p2);
    CHECK(p2 < p3);
}

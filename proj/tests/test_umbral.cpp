#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "umbral/lambency.hpp"
#include "umbral/theta.hpp"

using namespace umbral;

TEST_CASE("lambency tables: classes, characters, eigenvalue wiring") {
    CHECK(lambencies().size() == 4);
    const auto& l105 = lambency("10+5");
    CHECK(l105.M == 10);
    CHECK(l105.index_m == Half(5));
    CHECK(l105.classes.size() == 5);
    // chi = fixed-point counts of S_4 on 4 points
    std::vector<long long> chi;
    for (const auto& c : l105.classes) chi.push_back(c.chi);
    CHECK(chi == std::vector<long long>{4, 0, 1, 2, 0});

    const auto& c3a = class_record(l105, "3A");
    CycQ w3 = CycQ::root_of_unity(Rational(1, 3));
    CHECK(c3a.fermion_eigenvalues == std::vector<CycQ>{w3, w3 * w3});
    REQUIRE(c3a.boson_modes.size() == 3);
    CHECK(c3a.boson_modes[1].second == w3);

    const auto& c4a = class_record(l105, "4A");
    CHECK(c4a.fermion_eigenvalues[1] == -CycQ::one());
    CHECK(c4a.boson_modes[1].second == CycQ::imaginary_unit());

    CHECK(lambency("14+7").classes.size() == 3);
    CHECK(lambency("22+11").classes.size() == 2);
    CHECK(lambency("46+23").classes.size() == 1);
    std::vector<long long> chi147, chi2211;
    for (const auto& c : lambency("14+7").classes) chi147.push_back(c.chi);
    for (const auto& c : lambency("22+11").classes) chi2211.push_back(c.chi);
    CHECK(chi147 == std::vector<long long>{3, 1, 0});
    CHECK(chi2211 == std::vector<long long>{2, 0});
    CHECK(lambency("46+23").classes[0].chi == 1);
}

TEST_CASE("psi leading terms: -2 y^{1/2} at q^0 for every class") {
    for (const auto& l : lambencies()) {
        Window w = Window::request(Rational(1), Half(-20));
        for (const auto& c : l.classes) {
            JacobiSeries p = psi_product(l, c.name, w);
            auto rng = p.y_range_at(Rational(0));
            REQUIRE(rng.has_value());
            CHECK(rng->second == Half(1));
            CHECK(p.coefficient(Rational(0), Half(1)) == CycQ(Rational(-2)));
        }
    }
}

TEST_CASE("theorem identity on a small window, all classes of 10+5 and 46+23") {
    Window w = Window::request(Rational(3), Half(-40));
    TheoremReport r105 = verify_theorem(lambency("10+5"), w);
    CHECK(r105.all_pass);
    CHECK(r105.classes.size() == 5);
    TheoremReport r4623 = verify_theorem(lambency("46+23"), w);
    CHECK(r4623.all_pass);
}

TEST_CASE("mutation detector: swapping table rows breaks the identity") {
    // exchange the 2A/2B boson eigenvalues of 10+5 and compare product vs the
    // untouched closed form
    const auto& l = lambency("10+5");
    Window w = Window::request(Rational(3), Half(-30));
    TraceSpec spec = trace_spec(l, "2A");
    TraceSpec spec_b = trace_spec(l, "2B");
    for (std::size_t i = 0; i < spec.oscillators.size(); ++i)
        spec.oscillators[i].eigenvalue = spec_b.oscillators[i].eigenvalue;
    JacobiSeries mutated = trace_by_product(spec, w);
    JacobiSeries closed = psi_closed(l, "2A", w);
    auto mm = first_mismatch(closed, mutated);
    REQUIRE(mm.has_value());
    CHECK(mm->qexp <= Rational(3));
}

TEST_CASE("h_series: chi = 0 classes theta-decompose without subtraction") {
    const auto& l = lambency("10+5");
    Window w = Window::request(Rational(4), Half(-60));
    JacobiSeries psi = psi_closed(l, "2A", w);
    ThetaCoefficients hc = theta_decompose(psi, l.index_m); // no polar part needed
    CHECK(hc.h.size() == 5);
}

TEST_CASE("h_series: exponents, polar convention, odd symmetry measurement") {
    const auto& l = lambency("10+5");
    Window w = Window::request(Rational(4), Half(-60));
    auto H = h_series(l, "1A", w);
    CHECK(H.size() == 5); // s in {-3/2, ..., 5/2}

    // every H_{g,2s} supports only q-exponents in -s^2/M + Z
    for (const auto& [s2, h] : H) {
        for (const auto& [qn, c] : h.terms) {
            Rational q(qn, h.qden);
            Rational frac = q + Rational(s2 * s2, 4 * l.M);
            CHECK(frac.is_integer());
        }
    }

    // umbral normalisation: H_{1A,1} = -2 q^{-1/40} + O(q), H odd in the label
    const QSeries& h1 = H.at(1);
    REQUIRE(!h1.terms.empty());
    CHECK(Rational(h1.terms.begin()->first, h1.qden) == Rational(-1, 40));
    CHECK(h1.terms.begin()->second == CycQ(Rational(-2)));
    const QSeries& hm1 = H.at(-1);
    CHECK(hm1.terms.begin()->second == CycQ(Rational(2)));
    // measured relation: H_{g,-2s} = -H_{g,2s} on the computed range
    for (const auto& [s2, h] : H) {
        if (s2 == 5 || -s2 == 5) continue; // 5/2 = -5/2 mod 5 is its own partner
        auto it = H.find(-s2);
        REQUIRE(it != H.end());
        QSeries neg;
        neg.qden = h.qden;
        for (const auto& [qn, c] : h.terms) neg.add_term(qn, -c);
        CHECK(it->second == neg);
    }
}

TEST_CASE("h_series leading residue behaviour for 46+23") {
    const auto& l = lambency("46+23");
    Window w = Window::request(Rational(3), Half(-60));
    // the polar datum -2 chi = -2 makes the finite part decompose
    auto H = h_series(l, "1A", w);
    CHECK(H.size() == 23);
    const QSeries& h1 = H.at(1);
    REQUIRE(!h1.terms.empty());
    CHECK(Rational(h1.terms.begin()->first, h1.qden) == Rational(-1, 184));
    CHECK(h1.terms.begin()->second == CycQ(Rational(-2)));
}

TEST_CASE("split rejects a wrong residue constant") {
    const auto& l = lambency("10+5");
    Window w = Window::request(Rational(4), Half(-60));
    JacobiSeries psi = psi_closed(l, "1A", w);
    std::vector<PolarDatum> wrong = {
        {TorsionPoint{Rational(0), Rational(0)}, CycQ(Rational(-7))}};
    CHECK_THROWS_AS(split(psi, l.index_m, wrong), ConsistencyError);
}

TEST_CASE("residue triangle on two classes (full set in the acceptance suite)") {
    for (const auto* cls : {"1A", "2B"}) {
        const auto& l = lambency("10+5");
        JacobiSeries sh = psi_closed(l, cls, Window::request(Rational(2), Half(-80)));
        JacobiSeries dp = psi_closed(l, cls, Window::request(Rational(2), Half(-120)));
        CycQ d = residue_at_origin(sh, dp, l.index_m);
        CHECK(d == CycQ(Rational(-2 * class_record(l, cls).chi)));
    }
}

TEST_CASE("weight-0 quotient of 10+5 equals 2 theta1(2z)^2/theta1(z)^2") {
    Window w = Window::request(Rational(4), Half(-40));
    JacobiSeries quot = weight0_quotient(lambency("10+5"), w);
    EtaThetaExpr rhs;
    rhs.scalar = CycQ(Rational(2));
    rhs.atoms = {{EtaThetaAtom::Kind::theta1, 1, 2, 2},
                 {EtaThetaAtom::Kind::theta1, 1, 1, -2}};
    JacobiSeries expect = expand_eta_theta(rhs, w);
    CHECK(!first_mismatch(quot, expect));
}

TEST_CASE("weight-0 quotient signature: finite slices and index M/4 + 1/2") {
    for (const auto& l : lambencies()) {
        Window w = Window::request(Rational(3), Half(-40));
        JacobiSeries quot = weight0_quotient(l, w);
        for (const Rational& q : quot.q_slices()) {
            auto rng = quot.y_range_at(q);
            REQUIRE(rng.has_value());
            CHECK(rng->first.num2 > w.yfloor.num2 + 10);
        }
        CHECK(!elliptic_shift_violation(quot, Half((l.M + 2) / 2)));
    }
}

TEST_CASE("A-D correspondence prefactor product is a well-defined annulus series") {
    for (const auto& l : lambencies()) {
        Window w = Window::request(Rational(2), Half(-30));
        JacobiSeries p = ad_correspondence_product(l, w);
        CHECK(!p.is_zero());
        CHECK(p.window().qmax >= Rational(2));
        // index bookkeeping: M/4 + 2 - 1/2 elliptic shift relation holds
        CHECK(!elliptic_shift_violation(p, Half((l.M + 6) / 2)));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "umbral/fock.hpp"
#include "umbral/lambency.hpp"

using namespace umbral;

namespace {

TraceSpec bare_spec() {
    TraceSpec s;
    s.pre_c = CycQ::one();
    s.pre_q = Rational(0);
    s.pre_y = Half(0);
    s.eta_squared_factors = false;
    return s;
}

} // namespace

TEST_CASE("single fermionic mode: two states give 1 - y q") {
    TraceSpec s = bare_spec();
    s.oscillators.push_back({Statistics::fermionic, Half::of_int(1), CycQ::one(), 1});
    Window w = Window::request(Rational(1), Half(-4));
    JacobiSeries t = trace_by_enumeration(s, w);
    CHECK(t.term_count() == 2);
    CHECK(t.coefficient(Rational(0), Half(0)) == CycQ::one());
    CHECK(t.coefficient(Rational(1), Half::of_int(1)) == -CycQ::one());
}

TEST_CASE("single bosonic mode: occupation tower 1 + yq + y^2 q^2 + ...") {
    TraceSpec s = bare_spec();
    s.oscillators.push_back({Statistics::bosonic, Half::of_int(1), CycQ::one(), 1});
    Window w = Window::request(Rational(4), Half(-4));
    JacobiSeries t = trace_by_enumeration(s, w);
    for (long long k = 0; k <= 4; ++k)
        CHECK(t.coefficient(Rational(k), Half::of_int(k)) == CycQ::one());
}

TEST_CASE("empty oscillator list: prefactor times the neutral towers") {
    TraceSpec s = bare_spec();
    s.pre_c = CycQ(Rational(-2));
    s.pre_y = Half(1);
    s.eta_squared_factors = true;
    Window w = Window::request(Rational(4), Half(-8));
    JacobiSeries prod = trace_by_product(s, w);
    JacobiSeries enumd = trace_by_enumeration(s, w);
    CHECK(!first_mismatch(prod, enumd));
    // (1-q)^2 = 1 - 2q + q^2 at the bottom orders, all at y^{1/2}
    CHECK(prod.coefficient(Rational(0), Half(1)) == CycQ(Rational(-2)));
    CHECK(prod.coefficient(Rational(1), Half(1)) == CycQ(Rational(4)));
}

TEST_CASE("enumeration equals product on a twisted two-mode system") {
    TraceSpec s = bare_spec();
    CycQ w3 = CycQ::root_of_unity(Rational(1, 3));
    s.oscillators.push_back({Statistics::fermionic, Half::of_int(-2), w3.conj(), 0});
    s.oscillators.push_back({Statistics::fermionic, Half::of_int(2), w3, 1});
    s.oscillators.push_back({Statistics::bosonic, Half::of_int(-1), w3, 0});
    s.oscillators.push_back({Statistics::bosonic, Half::of_int(1), w3.conj(), 1});
    Window w = Window::request(Rational(3), Half(-12));
    CHECK(!first_mismatch(trace_by_product(s, w), trace_by_enumeration(s, w)));
}

TEST_CASE("fock oracle on the smallest lambency cases") {
    // full grid runs in the acceptance suite
    for (const char* cls : {"1A", "2A"}) {
        const auto& l = lambency("22+11");
        Window w = Window::request(Rational(2), Half(-16));
        CHECK(!first_mismatch(trace_by_product(trace_spec(l, cls), w),
                              trace_by_enumeration(trace_spec(l, cls), w)));
    }
}

TEST_CASE("setting all eigenvalues to 1 reproduces the identity class") {
    const auto& l = lambency("10+5");
    TraceSpec tw = trace_spec(l, "3A");
    for (auto& o : tw.oscillators) o.eigenvalue = CycQ::one();
    Window w = Window::request(Rational(3), Half(-16));
    CHECK(!first_mismatch(trace_by_product(tw, w), psi_product(l, "1A", w)));
}

TEST_CASE("charge grading: y -> 1 equals the sum over each q-slice") {
    const auto& l = lambency("14+7");
    Window w = Window::request(Rational(3), Half(-20));
    JacobiSeries t = psi_product(l, "2A", w);
    for (const Rational& q : t.q_slices()) {
        CycQ total = t.slice_sum(q);
        CycQ manual;
        for (const auto& [k, c] : t.terms())
            if (Rational(k.first, t.qden()) == q) manual += c;
        CHECK(total == manual);
    }
}

TEST_CASE("budget rejection") {
    const auto& l = lambency("46+23");
    Window w = Window::request(Rational(4), Half(-24));
    CHECK_THROWS_AS(trace_by_enumeration(trace_spec(l, "1A"), w, 100), BudgetError);
}

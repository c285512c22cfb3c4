#pragma once

#include "umbral/series.hpp"

#include <vector>

namespace umbral {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Statistics { fermionic, bosonic };

/// One mode family of a free-field trace. The family places one mode at each
/// energy n - 1 + energy_offset for n = 1, 2, ...; every excitation carries
/// `charge` in the y-grading and multiplies the trace by `eigenvalue`.
/// Fermionic families contribute parity -1 per excitation (numerator factors
/// (1 - lambda y^c q^E)), bosonic ones parity +1 (denominator factors).
struct OscillatorSpec {
    Statistics statistics = Statistics::fermionic;
    Half charge;
    CycQ eigenvalue = CycQ::one();
    int energy_offset = 1; // 0: modes at q^{n-1}; 1: modes at q^n
};

struct TraceSpec {
    CycQ pre_c = CycQ::one();
    Rational pre_q = Rational(0);
    Half pre_y = Half(0);
    bool eta_squared_factors = true; // the universal (1 - q^n)^2 numerator
    std::vector<OscillatorSpec> oscillators;
};

/// Assembles the infinite product of the trace spec via product_expand,
/// enumerating mode energies up to the window's q-order.
JacobiSeries trace_by_product(const TraceSpec& spec, const Window& w);

/// Brute-force graded trace: enumerates occupation configurations over all
/// modes with energy <= qmax (fermionic occupations in {0,1}, bosonic in
/// Z>=0), each contributing eigenvalue^occ * parity * y^{charge occ}
/// q^{energy occ}. Independent of the product route; the budget caps the
/// number of visited configurations.
JacobiSeries trace_by_enumeration(const TraceSpec& spec, const Window& w,
                                  long long budget = 10'000'000);

} // namespace umbral

#pragma once

#include "umbral/appell.hpp"
#include "umbral/fock.hpp"

#include <optional>
#include <string>

namespace umbral {

/// One multiplicative atom eta(a tau), theta_1(a tau, b z) or
/// theta_2(a tau, b z), raised to an integer power (negative powers invert
/// factor by factor).
struct EtaThetaAtom {
    enum class Kind { eta, theta1, theta2 } kind = Kind::eta;
    long long a = 1; // tau multiplier
    long long b = 1; // z multiplier (ignored for eta)
    int power = 1;
};

/// scalar * product of atoms; every denominator atom is a theta/eta product,
/// invertible factor by factor in the |y| > 1 region.
struct EtaThetaExpr {
    CycQ scalar;
    std::vector<EtaThetaAtom> atoms;
};

struct ClassRecord {
    std::string name;
    long long chi = 0;                 // permutation character (fixed points)
    Half fermion_charge;               // y-weight of the fermionic modes
    std::vector<CycQ> fermion_eigenvalues;
    std::vector<std::pair<Half, CycQ>> boson_modes; // (charge, eigenvalue)
    EtaThetaExpr closed_form;
};

struct LambencyData {
    std::string label;       // "10+5", "14+7", "22+11", "46+23"
    long long M = 0;         // 10, 14, 22, 46
    Half index_m;            // M/4
    std::string root_system; // "D6+D6+D6+D6", ...
    std::vector<ClassRecord> classes;
};

const std::vector<LambencyData>& lambencies();
const LambencyData& lambency(const std::string& label);
const ClassRecord& class_record(const LambencyData& l, const std::string& name);

/// Expands an eta-theta expression on the window (atoms with negative power
/// are inverted factor by factor as geometric series).
JacobiSeries expand_eta_theta(const EtaThetaExpr& e, const Window& w);

/// The meromorphic form psi_g from its closed eta-theta expression.
JacobiSeries psi_closed(const LambencyData& l, const std::string& cls, const Window& w);

/// The trace spec of the free-field realisation of psi_g.
TraceSpec trace_spec(const LambencyData& l, const std::string& cls);

/// The same form from the twisted-trace product formula.
JacobiSeries psi_product(const LambencyData& l, const std::string& cls, const Window& w);

struct ClassReport {
    std::string class_name;
    bool pass = false;
    Rational checked_qmax;
    std::optional<Mismatch> mismatch;
};
struct TheoremReport {
    std::string lambency_label;
    bool all_pass = false;
    std::vector<ClassReport> classes;
};

/// Checks psi_closed = psi_product exactly on the common window, per class.
TheoremReport verify_theorem(const LambencyData& l, const Window& w);

/// H_{g,2s} = e(s/2) h_s for s in {-M/4+1, ..., M/4}, from splitting psi_g
/// against the single polar datum ((0,0), -2 chi_g) and theta-decomposing
/// the finite part. Key: doubled s.
std::map<long long, QSeries> h_series(const LambencyData& l, const std::string& cls,
                                      const Window& w);

/// psi_e theta_1(tau,z) / (i eta^3): the weight-0 quotient of the identity
/// class, a weak form of index M/4 + 1/2.
JacobiSeries weight0_quotient(const LambencyData& l, const Window& w);

/// First violation of the elliptic (1,0)-shift coefficient relation
/// c(a, l) = e(m) c(a - l + m, l - 2m) at index m, checked wherever both
/// slots are inside the window.
std::optional<Mismatch> elliptic_shift_violation(const JacobiSeries& s, Half m);

/// psi_e theta_1(tau,2z) / theta_1(tau,z) as an annulus series (the
/// computable face of the A-D correspondence prefactor identity).
JacobiSeries ad_correspondence_product(const LambencyData& l, const Window& w);

} // namespace umbral

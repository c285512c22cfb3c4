#include "umbral/fock.hpp"

#include <algorithm>

namespace umbral {

namespace {

struct Mode {
    long long energy = 0; // integer q-exponent per excitation
    Half charge;
    CycQ eigenvalue;
    bool fermionic = true;
};

std::vector<Mode> mode_list(const TraceSpec& spec, long long qmax) {
    std::vector<Mode> modes;
    auto add_family = [&](Statistics st, Half charge, const CycQ& ev, int offset) {
        for (long long n = 1; n - 1 + offset <= qmax; ++n) {
            long long e = n - 1 + offset;
            if (e == 0 && charge >= Half(0))
                throw std::domain_error("trace: energy-0 mode must carry negative "
                                        "charge in the expansion region");
            modes.push_back({e, charge, ev, st == Statistics::fermionic});
        }
    };
    for (const auto& o : spec.oscillators)
        add_family(o.statistics, o.charge, o.eigenvalue, o.energy_offset);
    if (spec.eta_squared_factors) {
        add_family(Statistics::fermionic, Half(0), CycQ::one(), 1);
        add_family(Statistics::fermionic, Half(0), CycQ::one(), 1);
    }
    return modes;
}

} // namespace

JacobiSeries trace_by_product(const TraceSpec& spec, const Window& w) {
    long long qmax = static_cast<long long>((w.qmax - spec.pre_q).floor());
    std::vector<FactorSpec> fs;
    for (const Mode& md : mode_list(spec, qmax))
        fs.push_back({!md.fermionic, md.eigenvalue, Rational(md.energy), md.charge});
    return product_expand(spec.pre_c, spec.pre_q, spec.pre_y, fs, w);
}

JacobiSeries trace_by_enumeration(const TraceSpec& spec, const Window& w,
                                  long long budget) {
    long long qmax = static_cast<long long>((w.qmax - spec.pre_q).floor());
    Half floor_rel = Half(w.yfloor.num2 - spec.pre_y.num2);
    std::vector<Mode> modes = mode_list(spec, qmax);

    // static per-mode occupation caps: positive charges are capped by energy
    // alone; negative charges may dip below the floor and recover through
    // later positive charges, so their cap includes the total possible gain
    std::vector<long long> max_occ(modes.size(), 0);
    long long total_gain2 = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& md = modes[i];
        if (md.charge < Half(0)) continue;
        if (md.energy <= 0)
            throw std::domain_error("trace_by_enumeration: unbounded mode");
        max_occ[i] = md.fermionic ? 1 : qmax / md.energy;
        total_gain2 += max_occ[i] * md.charge.num2;
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& md = modes[i];
        if (!(md.charge < Half(0))) continue;
        long long cap_y = (-floor_rel.num2 + total_gain2) / (-md.charge.num2);
        long long cap_e = md.energy > 0 ? qmax / md.energy
                                        : std::numeric_limits<long long>::max();
        long long cap = std::min(cap_e, cap_y);
        max_occ[i] = md.fermionic ? std::min<long long>(1, cap) : cap;
        max_occ[i] = std::max<long long>(0, max_occ[i]);
    }
    std::vector<long long> suffix_gain2(modes.size() + 1, 0);
    for (std::size_t i = modes.size(); i-- > 0;) {
        long long gain = 0;
        if (modes[i].charge > Half(0)) gain = max_occ[i] * modes[i].charge.num2;
        suffix_gain2[i] = suffix_gain2[i + 1] + gain;
    }

    JacobiSeries acc(Window{Rational(qmax), floor_rel, Half(0), false}, 1);
    long long visited = 0;

    // depth-first over occupation numbers
    struct Frame {
        std::size_t idx;
        long long energy;
        long long y2;
        CycQ coeff;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0, CycQ::one()});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (++visited > budget)
            throw BudgetError("trace_by_enumeration: state count exceeds budget");
        if (f.idx == modes.size()) {
            if (Half(f.y2) >= floor_rel) acc.add_term(f.energy, f.y2, f.coeff);
            continue;
        }
        const Mode& md = modes[f.idx];
        CycQ step = md.eigenvalue;
        if (md.fermionic) step = -step;
        CycQ run = f.coeff;
        long long e = f.energy;
        long long y2 = f.y2;
        for (long long occ = 0; occ <= max_occ[f.idx]; ++occ) {
            if (occ > 0) {
                e += md.energy;
                y2 += md.charge.num2;
                run = run * step;
            }
            if (e > qmax) break;
            if (y2 + suffix_gain2[f.idx + 1] < floor_rel.num2) {
                if (md.charge <= Half(0)) break;
                continue;
            }
            stack.push_back({f.idx + 1, e, y2, run});
        }
    }
    acc = acc.monomial_mul(spec.pre_c, spec.pre_q, spec.pre_y);
    JacobiSeries out = acc.restricted(Window::request(w.qmax, w.yfloor));
    return out;
}

} // namespace umbral

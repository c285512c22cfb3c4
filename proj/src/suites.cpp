#include "umbral/suites.hpp"

#include "umbral/appell.hpp"
#include "umbral/eichler_zagier.hpp"
#include "umbral/fock.hpp"
#include "umbral/lambency.hpp"
#include "umbral/theta.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace umbral::suites {

namespace {

std::string rstr(const Rational& r) { return r.str(); }

void add_item(SuiteResult& res, const std::string& name, bool pass,
              const std::string& detail = "") {
    res.items.push_back({name, pass, detail});
    res.pass = res.pass && pass;
}

// ---- triple product ------------------------------------------------------

SuiteResult suite_triple_product(const SuiteOptions& opts) {
    SuiteResult res{"triple-product", true, {}};
    Rational qmax = opts.qorder.value_or(Rational(161, 8)); // 20 + 1/8
    int sigma = triple_product_sign(qmax);
    long long bound = 2;
    while (Rational(bound * bound, 8) <= qmax) bound += 2;
    Window w{qmax, Half(-bound), Half(bound), false};
    JacobiSeries sum_form = theta_mr(ThetaIndex(Half(1), Half(1)), w);
    JacobiSeries prod_form = theta1_series(w).times(CycQ(Rational(sigma)));
    auto mm = first_mismatch(sum_form, prod_form);
    std::ostringstream d;
    d << "sigma = " << (sigma > 0 ? "+1" : "-1") << ", coefficients through q^"
      << rstr(qmax);
    add_item(res, "sum form = sigma * product form", !mm.has_value(), d.str());
    return res;
}

// ---- Eichler-Zagier / Omega ---------------------------------------------

Window theta_window_for_ez(Half m, long long n, const Rational& target) {
    double md = m.as_rational().approx();
    double t = target.approx();
    double q = t;
    double L = 0;
    for (int i = 0; i < 40; ++i) {
        L = std::sqrt(4.0 * md * q) + 2.0 * md + 2.0;
        double alpha = n > 1 ? static_cast<double>(n - 1) / n : 0.0;
        q = t + md + alpha * L + 1.0;
    }
    long long qi = static_cast<long long>(std::ceil(q)) + 1;
    long long Li = static_cast<long long>(std::ceil(L)) + 1;
    return Window{Rational(qi), Half(-2 * Li), Half(2 * Li), false};
}

SuiteResult suite_ez_omega(const SuiteOptions& opts) {
    SuiteResult res{"ez-omega", true, {}};
    Rational target = opts.qorder.value_or(Rational(4));
    std::vector<std::pair<Half, long long>> cases = {
        {Half::of_int(1), 1}, {Half(3), 3},  {Half(5), 1},  {Half(5), 5},
        {Half(7), 7},         {Half(11), 11}, {Half(23), 23}};
    if (opts.m_filter) {
        cases.clear();
        long long n = opts.n_filter.value_or(mtilde(*opts.m_filter));
        cases.emplace_back(*opts.m_filter, n);
    }
    for (const auto& [m, n] : cases) {
        Window w = theta_window_for_ez(m, n, target);
        bool all = true;
        Rational reached(0);
        std::string fail;
        for (Half r : ThetaIndex::representatives(m)) {
            JacobiSeries lhs = ez_operator(theta_mr(ThetaIndex(m, r), w), m, n);
            OmegaMatrix om(m, n);
            JacobiSeries rhs = JacobiSeries::zero(w);
            bool first = true;
            for (Half rp : ThetaIndex::representatives(m)) {
                if (om.entry(r, rp) == 0) continue;
                JacobiSeries t = theta_mr(ThetaIndex(m, rp), w);
                rhs = first ? t : rhs + t;
                first = false;
            }
            if (first) rhs = JacobiSeries::zero(w);
            Rational common = std::min(lhs.window().qmax, rhs.window().qmax);
            reached = reached == Rational(0) ? common : std::min(reached, common);
            if (common < target) {
                all = false;
                fail = "window too small: reached q-order " + rstr(common);
                break;
            }
            auto mm = first_mismatch(lhs, rhs);
            if (mm) {
                all = false;
                fail = "mismatch at q^" + rstr(mm->qexp) + " y^" +
                       mm->yexp.str();
                break;
            }
        }
        std::ostringstream name;
        name << "theta|W = Omega theta at m = " << m.str() << ", n = " << n;
        add_item(res, name.str(), all,
                 all ? "exact through q-order " + rstr(reached) : fail);
    }
    return res;
}

// ---- Theorems (closed form vs trace product) -----------------------------

SuiteResult suite_theorems(const SuiteOptions& opts) {
    SuiteResult res{"theorems", true, {}};
    Rational qmax = opts.qorder.value_or(Rational(8));
    Window w = Window::request(qmax, Half(-80)); // y-floor -40
    for (const auto& l : lambencies()) {
        if (opts.lambency_filter && l.label != *opts.lambency_filter) continue;
        TheoremReport rep = verify_theorem(l, w);
        for (const auto& c : rep.classes) {
            std::string detail = "exact through q-order " + rstr(c.checked_qmax);
            if (c.mismatch)
                detail = "mismatch at q^" + rstr(c.mismatch->qexp) + " y^" +
                         c.mismatch->yexp.str() + ": closed " + c.mismatch->lhs.str() +
                         " vs product " + c.mismatch->rhs.str();
            add_item(res, "psi(" + l.label + ", " + c.class_name + ")", c.pass, detail);
        }
    }
    return res;
}

// ---- Fock enumeration oracle ---------------------------------------------

SuiteResult suite_fock_oracle(const SuiteOptions& opts) {
    SuiteResult res{"fock-oracle", true, {}};
    struct Case {
        const char* lam;
        const char* cls;
        long long qorder;
    };
    std::vector<Case> cases = {{"22+11", "1A", 4}, {"22+11", "2A", 4},
                               {"46+23", "1A", 4}, {"10+5", "1A", 3},
                               {"14+7", "1A", 3}};
    for (const auto& c : cases) {
        const auto& l = lambency(c.lam);
        Window w = Window::request(Rational(c.qorder), Half(-24));
        TraceSpec spec = trace_spec(l, c.cls);
        JacobiSeries prod = trace_by_product(spec, w);
        bool pass = false;
        std::string detail;
        try {
            JacobiSeries enumd = trace_by_enumeration(spec, w, opts.budget);
            auto mm = first_mismatch(prod, enumd);
            pass = !mm.has_value();
            detail = pass ? "exact at q-order " + std::to_string(c.qorder)
                          : "mismatch at q^" + rstr(mm->qexp) + " y^" + mm->yexp.str();
        } catch (const BudgetError& e) {
            detail = e.what();
        }
        add_item(res,
                 std::string("enumeration = product (") + c.lam + ", " + c.cls + ")",
                 pass, detail);
    }
    return res;
}

// ---- Splitting / theta decomposition -------------------------------------

SuiteResult suite_splitting(const SuiteOptions& opts) {
    SuiteResult res{"splitting", true, {}};
    for (const auto& l : lambencies()) {
        if (opts.lambency_filter && l.label != *opts.lambency_filter) continue;
        // the second lattice representative of the central residue classes
        // reaches q-order (2m - 1/2)^2/4m, so 46+23 runs deeper
        Rational qmax = opts.qorder.value_or(l.M == 46 ? Rational(12) : Rational(8));
        Window w = Window::request(qmax, Half(-80));
        for (const auto& c : l.classes) {
            bool pass = false;
            std::string detail;
            try {
                JacobiSeries psi = psi_closed(l, c.name, w);
                std::vector<PolarDatum> data;
                if (c.chi != 0)
                    data.push_back({TorsionPoint{Rational(0), Rational(0)},
                                    CycQ(Rational(-2 * c.chi))});
                SplitResult sp = split(psi, l.index_m, data);
                int min_reps = 1 << 20;
                for (const auto& [r2, cnt] : sp.coefficients.reps_checked)
                    min_reps = std::min(min_reps, cnt);
                pass = min_reps >= 2;
                std::ostringstream d;
                d << "finite part theta-decomposes; h consistent across >= "
                  << min_reps << " representatives per class";
                detail = d.str();
                if (!pass) detail += " (need >= 2)";
            } catch (const ConsistencyError& e) {
                detail = std::string("consistency failure: ") + e.what();
            }
            add_item(res, "split(" + l.label + ", " + c.name + ")", pass, detail);
        }
    }
    return res;
}

// ---- Residue triangle -----------------------------------------------------

SuiteResult suite_residues(const SuiteOptions& opts) {
    SuiteResult res{"residues", true, {}};
    Rational qmax = opts.qorder.value_or(Rational(8));
    for (const auto& l : lambencies()) {
        if (opts.lambency_filter && l.label != *opts.lambency_filter) continue;
        for (const auto& c : l.classes) {
            bool pass = false;
            std::string detail;
            try {
                JacobiSeries shallow =
                    psi_closed(l, c.name, Window::request(qmax, Half(-80)));
                JacobiSeries deep =
                    psi_closed(l, c.name, Window::request(qmax, Half(-120)));
                CycQ d = residue_at_origin(shallow, deep, l.index_m);
                CycQ expect = CycQ(Rational(-2 * c.chi));
                pass = (d == expect);
                detail = "D = " + d.str() + ", -2 chi = " + expect.str() +
                         " (floors -40, -60)";
            } catch (const std::exception& e) {
                detail = e.what();
            }
            add_item(res, "residue(" + l.label + ", " + c.name + ")", pass, detail);
        }
    }
    return res;
}

// ---- a(n) structure --------------------------------------------------------

SuiteResult suite_an_structure(const SuiteOptions&) {
    SuiteResult res{"an-structure", true, {}};
    bool bij = true, invol = true;
    std::string fail;
    for (long long mt = 1; mt <= 24 && bij && invol; ++mt) {
        ExactDivisorMap em = exact_divisor_map(mt);
        std::vector<long long> image;
        for (const auto& [n, a] : em.a) {
            image.push_back(a);
            if ((a * a) % (4 * mt) != 1 % (4 * mt)) {
                invol = false;
                fail = "a(" + std::to_string(n) + ")^2 != 1 mod " +
                       std::to_string(4 * mt) + " at mtilde " + std::to_string(mt);
            }
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<long long> o = o_group(mt);
        if (image != o) {
            bij = false;
            fail = "image of a differs from O at mtilde " + std::to_string(mt);
        }
    }
    add_item(res, "a : Ex(mtilde) -> O bijective, a^2 = 1 mod 4 mtilde (mtilde <= 24)",
             bij && invol, fail);

    std::mt19937 rng(20240517);
    bool law = true;
    std::string lawfail;
    for (int t = 0; t < 100 && law; ++t) {
        long long mt = 1 + rng() % 24;
        ExactDivisorMap em = exact_divisor_map(mt);
        std::vector<long long> ex = exact_divisors(mt);
        long long n1 = ex[rng() % ex.size()];
        long long n2 = ex[rng() % ex.size()];
        long long n3 = exact_divisor_product(n1, n2);
        if ((em.a[n1] * em.a[n2]) % (2 * mt) != em.a[n3] % (2 * mt)) {
            law = false;
            lawfail = "a(" + std::to_string(n1) + ") a(" + std::to_string(n2) +
                      ") != a(" + std::to_string(n3) + ") mod " +
                      std::to_string(2 * mt) + " at mtilde " + std::to_string(mt);
        }
    }
    add_item(res, "group law a(n) a(n') = a(n*n') on 100 random pairs", law, lawfail);
    return res;
}

// ---- orbit reduction -------------------------------------------------------

SuiteResult suite_orbit_reduction(const SuiteOptions&) {
    SuiteResult res{"orbit-reduction", true, {}};
    long long checked = 0;
    bool ok = true;
    std::string fail;
    for (long long qa = 1; qa <= 12 && ok; ++qa) {
        for (long long pa = 0; pa < qa && ok; ++pa) {
            if (llgcd(pa, qa) != 1 && pa != 0) continue;
            for (long long qb = 1; qb <= 12 && ok; ++qb) {
                for (long long pb = 0; pb < qb && ok; ++pb) {
                    if (llgcd(pb, qb) != 1 && pb != 0) continue;
                    if (pa == 0 && qa != 1) continue;
                    if (pb == 0 && qb != 1) continue;
                    TorsionPoint s{Rational(pa, qa), Rational(pb, qb)};
                    long long n = orbit_index(s);
                    TorsionPoint cur = s;
                    for (const auto& mv : reduce_to_standard(s))
                        cur = apply_move(cur, mv);
                    ++checked;
                    if (!(cur.alpha == Rational(1, n) && cur.beta == Rational(0))) {
                        ok = false;
                        fail = "replay failed at (" + rstr(s.alpha) + ", " +
                               rstr(s.beta) + ")";
                    }
                }
            }
        }
    }
    add_item(res, "replayed reduction word maps s to (1/n, 0)", ok,
             ok ? std::to_string(checked) + " points, denominators <= 12" : fail);
    return res;
}

// ---- Appell-Lerch elliptic law ---------------------------------------------

SuiteResult suite_appell_elliptic(const SuiteOptions& opts) {
    SuiteResult res{"appell-elliptic", true, {}};
    Rational qmax = opts.qorder.value_or(Rational(5));
    std::vector<Half> ms = {Half(5), Half(7)};
    std::vector<TorsionPoint> ss = {{Rational(0), Rational(0)},
                                    {Rational(1, 5), Rational(0)},
                                    {Rational(1, 2), Rational(1, 2)}};
    for (Half m : ms) {
        bool all = true;
        std::string fail;
        for (const auto& s : ss) {
            for (long long lam = -1; lam <= 1 && all; ++lam) {
                for (long long mu = -1; mu <= 1 && all; ++mu) {
                    Window w = Window::request(qmax, Half(-50));
                    TorsionPoint sp{s.alpha + Rational(lam), s.beta + Rational(mu)};
                    JacobiSeries lhs = appell_lerch(m, sp, w);
                    Rational x = -(m.as_rational()) *
                                 (s.alpha * Rational(mu) - s.beta * Rational(lam) +
                                  Rational(lam * mu + lam + mu));
                    JacobiSeries rhs =
                        appell_lerch(m, s, w).times(CycQ::root_of_unity(x));
                    auto mm = first_mismatch(lhs, rhs);
                    if (mm) {
                        all = false;
                        fail = "fails at s = (" + rstr(s.alpha) + "," + rstr(s.beta) +
                               "), (lambda,mu) = (" + std::to_string(lam) + "," +
                               std::to_string(mu) + "), q^" + rstr(mm->qexp);
                    }
                }
            }
        }
        add_item(res, "A^{s.(lambda,mu)} = phase A^s at m = " + m.str(), all,
                 all ? "exact on window overlaps, q-order " + rstr(qmax) : fail);
    }
    return res;
}

// ---- weight-0 signature ----------------------------------------------------

SuiteResult suite_weight0(const SuiteOptions& opts) {
    SuiteResult res{"weight0", true, {}};
    Rational qmax = opts.qorder.value_or(Rational(6));
    for (const auto& l : lambencies()) {
        if (opts.lambency_filter && l.label != *opts.lambency_filter) continue;
        Window w = Window::request(qmax, Half(-60));
        JacobiSeries quot = weight0_quotient(l, w);
        // finite y-support per q-order: the pole is removed, so every slice
        // bottoms out well above the floor
        bool finite = true;
        Half worst = Half(0);
        for (const Rational& q : quot.q_slices()) {
            auto rng = quot.y_range_at(q);
            if (!rng) continue;
            worst = std::min(worst, rng->first);
            if (rng->first.num2 <= w.yfloor.num2 + 16) finite = false;
        }
        Half mprime = Half((l.M + 2) / 2); // M/4 + 1/2
        auto ev = elliptic_shift_violation(quot, mprime);
        std::ostringstream d;
        d << "support bottoms at y^" << worst.str() << " (floor "
          << w.yfloor.str() << "); index " << mprime.str() << " shift relation "
          << (ev ? "violated" : "holds");
        add_item(res, "psi_e theta_1/(i eta^3) signature (" + l.label + ")",
                 finite && !ev, d.str());
    }
    return res;
}

} // namespace

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"triple-product", suite_triple_product},
        {"ez-omega", suite_ez_omega},
        {"theorems", suite_theorems},
        {"fock-oracle", suite_fock_oracle},
        {"splitting", suite_splitting},
        {"residues", suite_residues},
        {"an-structure", suite_an_structure},
        {"orbit-reduction", suite_orbit_reduction},
        {"appell-elliptic", suite_appell_elliptic},
        {"weight0", suite_weight0},
    };
    return reg;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(opts);
    throw std::domain_error("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(const SuiteOptions& opts) {
    std::vector<SuiteResult> out;
    for (const auto& [n, fn] : registry()) out.push_back(fn(opts));
    return out;
}

} // namespace umbral::suites

// Command-line surface: series expansion, trace routes, polar/finite
// splitting, H-coefficient export and the verification suites.
//
// Exit codes: 0 success/verified, 1 verification mismatch, 2 usage error.

#include "umbral/appell.hpp"
#include "umbral/eichler_zagier.hpp"
#include "umbral/fock.hpp"
#include "umbral/lambency.hpp"
#include "umbral/suites.hpp"
#include "umbral/theta.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace umbral;

Half parse_half(const std::string& s) {
    Rational r = Rational::parse(s);
    Rational doubled = r * Rational(2);
    if (!doubled.is_integer())
        throw CLI::ValidationError("expected an integer or half-integer, got " + s);
    return Half(static_cast<long long>(doubled.num()));
}

std::string coeff_text(const CycQ& c) {
    if (c.is_rational()) return c.rational_value().str();
    return c.str();
}

void print_series(const JacobiSeries& s, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(s) << "\n";
        return;
    }
    // text / csv: q, y, coefficient rows sorted by (q asc, y desc)
    const char* sep = format == "csv" ? "," : "  ";
    if (format == "csv") std::cout << "q,y,coeff\n";
    auto it = s.terms().begin();
    while (it != s.terms().end()) {
        long long qn = it->first.first;
        auto hi = s.terms().upper_bound({qn, std::numeric_limits<long long>::max()});
        std::vector<decltype(it)> slice;
        for (; it != hi; ++it) slice.push_back(it);
        for (auto rit = slice.rbegin(); rit != slice.rend(); ++rit) {
            std::cout << Rational((*rit)->first.first, s.qden()).str() << sep
                      << Half((*rit)->first.second).str() << sep
                      << coeff_text((*rit)->second) << "\n";
        }
    }
}

int cmd_expand(const std::string& fn, const std::string& ms, const std::string& rs,
               const Rational& qorder, long long yfloor2, const std::string& format) {
    Window w = Window::request(qorder, Half(yfloor2));
    JacobiSeries s;
    if (fn == "eta") {
        s = eta_series(w);
    } else if (fn == "theta1") {
        s = theta1_series(w);
    } else if (fn == "theta2") {
        s = theta2_series(w);
    } else if (fn == "theta_mr") {
        s = theta_mr(ThetaIndex(parse_half(ms), parse_half(rs)), w);
    } else {
        std::cerr << "unknown function: " << fn << "\n";
        return 2;
    }
    print_series(s, format);
    return 0;
}

int cmd_trace(const std::string& lam, const std::string& cls, const std::string& route,
              const Rational& qorder, long long yfloor2, long long budget,
              const std::string& format) {
    const auto& l = lambency(lam);
    Window w = Window::request(qorder, Half(yfloor2));
    JacobiSeries s = route == "enumerate"
                         ? trace_by_enumeration(trace_spec(l, cls), w, budget)
                         : psi_product(l, cls, w);
    print_series(s, format);
    return 0;
}

int cmd_split(const std::string& lam, const std::string& cls, const Rational& qorder,
              long long yfloor2, long long yfloor2_2, const std::string& format) {
    const auto& l = lambency(lam);
    const auto& rec = class_record(l, cls);
    Window w = Window::request(qorder, Half(yfloor2));
    JacobiSeries psi = psi_closed(l, cls, w);
    JacobiSeries psi_deep = psi_closed(l, cls, Window::request(qorder, Half(yfloor2_2)));
    CycQ d = residue_at_origin(psi, psi_deep, l.index_m);
    CycQ expect{Rational(-2 * rec.chi)};
    bool residue_ok = d == expect;

    std::vector<PolarDatum> data;
    if (!d.is_zero()) data.push_back({TorsionPoint{Rational(0), Rational(0)}, d});
    SplitResult sp = split(psi, l.index_m, data);
    if (format == "json") {
        std::cout << "{\"lambency\": \"" << lam << "\", \"class\": \"" << cls
                  << "\", \"residue\": " << coeff_to_json(d)
                  << ", \"residue_matches_character\": "
                  << (residue_ok ? "true" : "false")
                  << ", \"finite\": " << to_json(sp.finite)
                  << ", \"polar\": " << to_json(sp.polar) << "}\n";
    } else {
        std::cout << "residue D = " << coeff_text(d) << " (expected "
                  << coeff_text(expect) << ")\n";
        std::cout << "finite part:\n";
        print_series(sp.finite, format);
        std::cout << "polar part:\n";
        print_series(sp.polar, format);
    }
    return residue_ok ? 0 : 1;
}

int cmd_htable(const std::string& lam, const std::string& cls, long long nterms,
               const Rational& qorder, const std::string& format) {
    const auto& l = lambency(lam);
    Window w = Window::request(qorder, Half(-80));
    auto H = h_series(l, cls, w);
    if (format == "json") {
        std::cout << "{\"lambency\": \"" << lam << "\", \"class\": \"" << cls << "\"";
        for (const auto& [s2, h] : H) {
            std::cout << ", \"H_" << Half(s2).str() << "\": [";
            long long count = 0;
            bool first = true;
            for (const auto& [qn, c] : h.terms) {
                if (count++ >= nterms) break;
                if (!first) std::cout << ", ";
                first = false;
                std::cout << "{\"q\": \"" << Rational(qn, h.qden).str()
                          << "\", \"coeff\": " << coeff_to_json(c) << "}";
            }
            std::cout << "]";
        }
        std::cout << "}\n";
    } else {
        std::cout << "r,q,coeff\n";
        for (const auto& [s2, h] : H) {
            long long count = 0;
            for (const auto& [qn, c] : h.terms) {
                if (count++ >= nterms) break;
                std::cout << Half(s2).str() << "," << Rational(qn, h.qden).str() << ","
                          << coeff_text(c) << "\n";
            }
        }
    }
    return 0;
}

int cmd_verify(const std::string& suite, const suites::SuiteOptions& opts) {
    std::vector<suites::SuiteResult> results;
    if (suite == "all") {
        results = suites::run_all(opts);
    } else {
        results.push_back(suites::run_suite(suite, opts));
    }
    bool all = true;
    int items = 0;
    for (const auto& r : results) {
        for (const auto& it : r.items) {
            ++items;
            std::cout << (it.pass ? "PASS" : "FAIL") << "  [" << r.suite << "] "
                      << it.name;
            if (!it.detail.empty()) std::cout << " -- " << it.detail;
            std::cout << "\n";
            all = all && it.pass;
        }
    }
    std::cout << (all ? "verified" : "MISMATCH") << " (" << items << " checks)\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact meromorphic Jacobi forms of half-integral index: expansion, "
                 "free-field traces, polar/finite splitting and cross-verification"};
    app.require_subcommand(1);

    std::string fn = "eta", ms = "1/2", rs = "1/2", format = "text";
    std::string lam = "10+5", cls = "1A", route = "product", suite = "all";
    std::string qorder_s = "8";
    long long yfloor2 = -80, yfloor2_2 = 0, budget = 10'000'000, nterms = 10;
    if (const char* env = std::getenv("UMBRAL_BUDGET")) budget = std::atoll(env);

    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", format, "json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto add_yfloor = [&](CLI::App* c) {
        c->add_option("--yfloor", yfloor2,
                      "inclusive lower y-truncation, doubled (-80 means y^-40)");
    };

    CLI::App* expand = app.add_subcommand("expand", "expand a named special function");
    expand->add_option("--function", fn, "eta|theta1|theta2|theta_mr")->required();
    expand->add_option("--m", ms, "index m as p or p/2");
    expand->add_option("--r", rs, "label r as p or p/2");
    expand->add_option("--qorder", qorder_s, "inclusive q-order (rational)");
    add_yfloor(expand);
    add_format(expand);

    CLI::App* trace = app.add_subcommand("trace", "free-field trace of a class");
    trace->add_option("--lambency", lam)->required();
    trace->add_option("--class", cls)->required();
    trace->add_option("--route", route, "product|enumerate")
        ->check(CLI::IsMember({"product", "enumerate"}));
    trace->add_option("--qorder", qorder_s);
    add_yfloor(trace);
    trace->add_option("--budget", budget, "enumeration state budget");
    add_format(trace);

    CLI::App* split_cmd = app.add_subcommand("split", "polar/finite splitting");
    split_cmd->add_option("--lambency", lam)->required();
    split_cmd->add_option("--class", cls)->required();
    split_cmd->add_option("--qorder", qorder_s);
    add_yfloor(split_cmd);
    split_cmd->add_option("--yfloor2", yfloor2_2,
                          "second, lower floor for residue stabilisation (doubled)");
    add_format(split_cmd);

    CLI::App* ht = app.add_subcommand("h-table", "mock modular H coefficients");
    ht->add_option("--lambency", lam)->required();
    ht->add_option("--class", cls)->required();
    ht->add_option("--terms", nterms, "terms per component");
    ht->add_option("--qorder", qorder_s);
    add_format(ht);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite_q;
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--qorder", suite_q, "q-order override");
    std::string vm, vlam, vcls;
    long long vn = 0;
    verify->add_option("--m", vm, "ez-omega: index m");
    verify->add_option("--n", vn, "ez-omega: divisor n");
    verify->add_option("--lambency", vlam, "restrict to one lambency");
    verify->add_option("--class", vcls, "restrict to one class");
    verify->add_option("--budget", budget, "enumeration state budget");

    CLI11_PARSE(app, argc, argv);

    try {
        Rational qorder = Rational::parse(qorder_s);
        if (expand->parsed()) return cmd_expand(fn, ms, rs, qorder, yfloor2, format);
        if (trace->parsed())
            return cmd_trace(lam, cls, route, qorder, yfloor2, budget, format);
        if (split_cmd->parsed()) {
            if (yfloor2_2 == 0) yfloor2_2 = yfloor2 - 40;
            if (yfloor2_2 >= yfloor2) {
                std::cerr << "--yfloor2 must be lower than --yfloor\n";
                return 2;
            }
            return cmd_split(lam, cls, qorder, yfloor2, yfloor2_2, format);
        }
        if (ht->parsed()) return cmd_htable(lam, cls, nterms, qorder, format);
        if (verify->parsed()) {
            suites::SuiteOptions opts;
            if (!suite_q.empty()) opts.qorder = Rational::parse(suite_q);
            if (!vm.empty()) opts.m_filter = parse_half(vm);
            if (vn != 0) opts.n_filter = vn;
            if (!vlam.empty()) opts.lambency_filter = vlam;
            if (!vcls.empty()) opts.class_filter = vcls;
            opts.budget = budget;
            return cmd_verify(suite, opts);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

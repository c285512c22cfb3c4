#include "umbral/series.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace umbral {

namespace {

long long checked_ll(const Rational& r, long long den, const char* what) {
    // r * den must be an integer fitting long long
    Rational v = r * Rational(den);
    if (!v.is_integer()) throw std::logic_error(std::string(what) + ": denominator mismatch");
    return static_cast<long long>(v.num());
}

} // namespace

JacobiSeries JacobiSeries::monomial(const CycQ& c, const Rational& qe, Half ye, Window w) {
    long long den = lllcm(1, static_cast<long long>(qe.den()));
    JacobiSeries s(std::move(w), den);
    s.window_.ytotal = true; // a monomial is its own complete support
    if (!c.is_zero()) {
        s.set_term(checked_ll(qe, den, "monomial"), ye.num2, c);
        s.window_.ycap = std::max(s.window_.ycap, ye);
    }
    return s;
}

JacobiSeries JacobiSeries::rescaled(long long new_qden) const {
    if (new_qden == qden_) return *this;
    if (new_qden % qden_ != 0)
        throw std::logic_error("rescaled: new qden not a multiple");
    long long k = new_qden / qden_;
    JacobiSeries out(window_, new_qden);
    for (const auto& [key, c] : terms_) out.terms_.emplace(Key{key.first * k, key.second}, c);
    return out;
}

void JacobiSeries::set_term(long long qnum, long long ynum2, CycQ c) {
    if (c.is_zero())
        terms_.erase(Key{qnum, ynum2});
    else
        terms_[Key{qnum, ynum2}] = std::move(c);
}

void JacobiSeries::add_term(long long qnum, long long ynum2, const CycQ& c) {
    if (c.is_zero()) return;
    Key k{qnum, ynum2};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

JacobiSeries JacobiSeries::operator-() const {
    JacobiSeries out(window_, qden_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
    long long den = lllcm(a.qden_, b.qden_);
    if (a.qden_ != den) return a.rescaled(den) + b;
    if (b.qden_ != den) return a + b.rescaled(den);

    Window w;
    w.qmax = std::min(a.window_.qmax, b.window_.qmax);
    w.ycap = std::max(a.window_.ycap, b.window_.ycap);
    w.ytotal = a.window_.ytotal && b.window_.ytotal;
    if (w.ytotal)
        w.yfloor = std::min(a.window_.yfloor, b.window_.yfloor);
    else if (a.window_.ytotal)
        w.yfloor = b.window_.yfloor;
    else if (b.window_.ytotal)
        w.yfloor = a.window_.yfloor;
    else
        w.yfloor = std::max(a.window_.yfloor, b.window_.yfloor);

    JacobiSeries out(w, den);
    Rational qmax = w.qmax;
    auto keep = [&](const JacobiSeries::Key& k) {
        return Rational(k.first, den) <= qmax && Half(k.second) >= w.yfloor;
    };
    for (const auto& [k, c] : a.terms_)
        if (keep(k)) out.add_term(k.first, k.second, c);
    for (const auto& [k, c] : b.terms_)
        if (keep(k)) out.add_term(k.first, k.second, c);
    return out;
}

JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) { return a + (-b); }

JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) {
    long long den = lllcm(a.qden_, b.qden_);
    if (a.qden_ != den) return a.rescaled(den) * b;
    if (b.qden_ != den) return a * b.rescaled(den);

    // zero operands: intersection-style window, exact
    if (a.terms_.empty() || b.terms_.empty()) {
        Window w;
        w.qmax = std::min(a.window_.qmax, b.window_.qmax);
        w.yfloor = std::max(a.window_.yfloor, b.window_.yfloor);
        w.ycap = Half(0);
        w.ytotal = a.window_.ytotal && b.window_.ytotal;
        return JacobiSeries::zero(w, den);
    }

    auto supcap = [](const JacobiSeries& s) { return *s.max_y_support(); };
    auto supmin = [](const JacobiSeries& s) { return *s.min_y_support(); };
    Rational qmin_a = *a.min_q();
    Rational qmin_b = *b.min_q();

    Window w;
    w.qmax = std::min(a.window_.qmax + qmin_b, b.window_.qmax + qmin_a);
    w.ycap = supcap(a) + supcap(b);
    w.ytotal = a.window_.ytotal && b.window_.ytotal;
    if (w.ytotal) {
        w.yfloor = supmin(a) + supmin(b);
    } else {
        // a term missing below a's floor times an existing b term can pollute
        // everything under floor_a + supcap_b, and symmetrically
        long long f2 = std::numeric_limits<long long>::min();
        if (!a.window_.ytotal) f2 = std::max(f2, a.window_.yfloor.num2 + supcap(b).num2);
        if (!b.window_.ytotal) f2 = std::max(f2, b.window_.yfloor.num2 + supcap(a).num2);
        w.yfloor = Half(f2);
    }

    JacobiSeries out(w, den);
    long long qmax_num = checked_ll(w.qmax, den, "mul window");
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            long long qn = ka.first + kb.first;
            if (qn > qmax_num) continue;
            long long yn = ka.second + kb.second;
            if (yn < w.yfloor.num2) continue;
            out.add_term(qn, yn, ca * cb);
        }
    }
    return out;
}

JacobiSeries JacobiSeries::times(const CycQ& c) const {
    if (c.is_zero()) return JacobiSeries::zero(window_, qden_);
    JacobiSeries out(window_, qden_);
    for (const auto& [k, t] : terms_) out.set_term(k.first, k.second, t * c);
    return out;
}

JacobiSeries JacobiSeries::monomial_mul(const CycQ& c, const Rational& qe, Half ye) const {
    long long den = lllcm(qden_, static_cast<long long>(qe.den()));
    JacobiSeries src = (den == qden_) ? *this : rescaled(den);
    long long dq = checked_ll(qe, den, "monomial_mul");
    Window w = src.window_;
    w.qmax = w.qmax + qe;
    w.yfloor = w.yfloor + ye;
    w.ycap = w.ycap + ye;
    JacobiSeries out(w, den);
    if (c.is_zero()) return out;
    for (const auto& [k, t] : src.terms_)
        out.terms_.emplace(Key{k.first + dq, k.second + ye.num2}, t * c);
    return out;
}

const CycQ& JacobiSeries::coefficient(const Rational& qe, Half ye) const {
    static const CycQ zero_coeff = CycQ::zero();
    if (qe > window_.qmax || ye < window_.yfloor)
        throw WindowError("coefficient: query outside window (truncated data is not zero)");
    Rational scaled = qe * Rational(qden_);
    if (!scaled.is_integer()) return zero_coeff;
    auto it = terms_.find(Key{static_cast<long long>(scaled.num()), ye.num2});
    return it == terms_.end() ? zero_coeff : it->second;
}

JacobiSeries JacobiSeries::restricted(const Window& w) const {
    JacobiSeries out(w, qden_);
    bool dropped_low = false;
    for (const auto& [k, c] : terms_) {
        if (Rational(k.first, qden_) > w.qmax) continue;
        if (Half(k.second) < w.yfloor) { dropped_low = true; continue; }
        out.terms_.emplace(k, c);
    }
    auto cap = out.max_y_support();
    out.window_.ycap = cap ? std::max(*cap, w.yfloor) : w.yfloor;
    out.window_.ytotal = window_.ytotal && !dropped_low;
    return out;
}

std::optional<Rational> JacobiSeries::min_q() const {
    if (terms_.empty()) return std::nullopt;
    return Rational(terms_.begin()->first.first, qden_);
}

std::optional<Half> JacobiSeries::min_y_support() const {
    if (terms_.empty()) return std::nullopt;
    long long m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) m = std::min(m, k.second);
    return Half(m);
}

std::optional<Half> JacobiSeries::max_y_support() const {
    if (terms_.empty()) return std::nullopt;
    long long m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) m = std::max(m, k.second);
    return Half(m);
}

std::vector<Rational> JacobiSeries::q_slices() const {
    std::vector<Rational> out;
    long long last = 0;
    bool have = false;
    for (const auto& [k, c] : terms_) {
        if (!have || k.first != last) {
            out.emplace_back(k.first, qden_);
            last = k.first;
            have = true;
        }
    }
    return out;
}

std::optional<std::pair<Half, Half>> JacobiSeries::y_range_at(const Rational& q) const {
    Rational scaled = q * Rational(qden_);
    if (!scaled.is_integer()) return std::nullopt;
    long long qn = static_cast<long long>(scaled.num());
    auto lo = terms_.lower_bound(Key{qn, std::numeric_limits<long long>::min()});
    auto hi = terms_.upper_bound(Key{qn, std::numeric_limits<long long>::max()});
    if (lo == hi) return std::nullopt;
    long long mn = lo->first.second, mx = lo->first.second;
    for (auto it = lo; it != hi; ++it) {
        mn = std::min(mn, it->first.second);
        mx = std::max(mx, it->first.second);
    }
    return std::make_pair(Half(mn), Half(mx));
}

CycQ JacobiSeries::slice_sum(const Rational& q) const {
    CycQ acc;
    Rational scaled = q * Rational(qden_);
    if (!scaled.is_integer()) return acc;
    long long qn = static_cast<long long>(scaled.num());
    auto lo = terms_.lower_bound(Key{qn, std::numeric_limits<long long>::min()});
    auto hi = terms_.upper_bound(Key{qn, std::numeric_limits<long long>::max()});
    for (auto it = lo; it != hi; ++it) acc += it->second;
    return acc;
}

std::optional<Mismatch> first_mismatch(const JacobiSeries& a, const JacobiSeries& b) {
    long long den = lllcm(a.qden(), b.qden());
    JacobiSeries aa = a.rescaled(den);
    JacobiSeries bb = b.rescaled(den);
    Rational qmax = std::min(a.window().qmax, b.window().qmax);
    Half yfloor = std::max(a.window().yfloor, b.window().yfloor);
    long long qmax_num;
    {
        Rational scaled = qmax * Rational(den);
        qmax_num = static_cast<long long>(scaled.floor());
    }
    auto inside = [&](const JacobiSeries::Key& k) {
        return k.first <= qmax_num && k.second >= yfloor.num2;
    };
    auto ita = aa.terms().begin();
    auto itb = bb.terms().begin();
    const auto enda = aa.terms().end();
    const auto endb = bb.terms().end();
    while (ita != enda || itb != endb) {
        while (ita != enda && !inside(ita->first)) ++ita;
        while (itb != endb && !inside(itb->first)) ++itb;
        if (ita == enda && itb == endb) break;
        if (itb == endb || (ita != enda && ita->first < itb->first)) {
            return Mismatch{Rational(ita->first.first, den), Half(ita->first.second),
                            ita->second, CycQ::zero()};
        }
        if (ita == enda || itb->first < ita->first) {
            return Mismatch{Rational(itb->first.first, den), Half(itb->first.second),
                            CycQ::zero(), itb->second};
        }
        if (!(ita->second == itb->second)) {
            return Mismatch{Rational(ita->first.first, den), Half(ita->first.second),
                            ita->second, itb->second};
        }
        ++ita;
        ++itb;
    }
    return std::nullopt;
}

JacobiSeries substitute(const JacobiSeries& a, const Rational& qshift,
                        const Rational& yphase, const Rational& ypower_qshift) {
    const Rational& alpha = ypower_qshift;
    const Rational& beta = yphase;
    long long den = lllcm(a.qden(), static_cast<long long>(qshift.den()));
    den = lllcm(den, 2 * static_cast<long long>(alpha.den()));

    Window w = a.window();
    if (!(alpha == Rational(0))) {
        if (!a.window().ytotal)
            throw WindowError("substitute: tau-shift needs complete y-support");
        Rational floor2(a.window().yfloor.num2, 2);
        Rational cap2(a.window().ycap.num2, 2);
        w.qmax = a.window().qmax + qshift + alpha * (alpha > Rational(0) ? floor2 : cap2);
    } else {
        w.qmax = a.window().qmax + qshift;
    }

    JacobiSeries out(w, den);
    long long qmax_num = static_cast<long long>((w.qmax * Rational(den)).floor());
    for (const auto& [k, c] : a.rescaled(den).terms()) {
        Rational l2(k.second, 2); // y-exponent
        Rational q_new = Rational(k.first, den) + qshift + alpha * l2;
        long long qn = checked_ll(q_new, den, "substitute");
        if (qn > qmax_num) continue;
        CycQ phase = CycQ::root_of_unity(beta * l2);
        out.add_term(qn, k.second, c * phase);
    }
    return out;
}

JacobiSeries scale_variables(const JacobiSeries& a, long long qmult, long long ymult) {
    if (qmult <= 0 || ymult <= 0)
        throw std::domain_error("scale_variables: multipliers must be positive");
    Window w = a.window();
    w.qmax = a.window().qmax * Rational(qmult);
    w.yfloor = ymult * a.window().yfloor;
    w.ycap = ymult * a.window().ycap;
    JacobiSeries out(w, a.qden());
    for (const auto& [k, c] : a.terms())
        out.set_term(k.first * qmult, k.second * ymult, c);
    return out;
}

JacobiSeries geometric_factor(const CycQ& c, const Rational& qexp, Half yexp,
                              const Window& w) {
    if (qexp < Rational(0))
        throw std::domain_error("geometric_factor: negative q-exponent");
    if (qexp == Rational(0) && yexp >= Half(0))
        throw std::domain_error(
            "geometric_factor: needs qexp > 0 or (qexp = 0 and yexp < 0); the series "
            "would not converge in the expansion region");
    long long den = lllcm(1, static_cast<long long>(qexp.den()));
    JacobiSeries out(w, den);
    long long dq = checked_ll(qexp, den, "geometric_factor");
    long long qmax_num = static_cast<long long>((w.qmax * Rational(den)).floor());

    CycQ ck = CycQ::one();
    long long qn = 0;
    long long yn = 0;
    bool stopped_by_floor = false;
    while (true) {
        if (qn > qmax_num) break;
        if (yn < w.yfloor.num2) { stopped_by_floor = true; break; }
        out.add_term(qn, yn, ck);
        ck *= c;
        qn += dq;
        yn += yexp.num2;
        if (dq == 0 && yexp.num2 == 0) break; // unreachable by precondition
    }
    auto cap = out.max_y_support();
    out.mutable_window().ycap = cap ? *cap : Half(0);
    out.mutable_window().ytotal = !stopped_by_floor;
    return out;
}

JacobiSeries product_expand(const CycQ& pre_c, const Rational& pre_q, Half pre_y,
                            const std::vector<FactorSpec>& factors, const Window& w) {
    // Working floor: deep enough that dropping tails during the running
    // product can never pollute the requested window. Every factor can raise
    // y-exponents by at most its positive cap.
    long long total_up2 = std::max(0LL, pre_y.num2);
    for (const auto& f : factors) {
        if (f.yexp <= Half(0)) continue;
        if (f.denominator) {
            if (f.qexp == Rational(0))
                throw std::domain_error("product_expand: denominator factor with qexp 0 "
                                        "must lower y");
            long long reps = static_cast<long long>(((w.qmax - pre_q) / f.qexp).floor());
            if (reps < 0) reps = 0;
            total_up2 += f.yexp.num2 * reps;
        } else {
            total_up2 += f.yexp.num2;
        }
    }
    Window work;
    work.qmax = w.qmax - pre_q;
    work.yfloor = Half(w.yfloor.num2 - pre_y.num2 - total_up2);
    work.ycap = Half(0);
    work.ytotal = true;

    std::vector<FactorSpec> ordered = factors;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const FactorSpec& a, const FactorSpec& b) { return a.qexp < b.qexp; });

    JacobiSeries acc = JacobiSeries::monomial(CycQ::one(), Rational(0), Half(0), work);
    for (const auto& f : ordered) {
        if (f.qexp > work.qmax) continue; // factor is 1 within the window
        JacobiSeries fac;
        if (f.denominator) {
            fac = geometric_factor(f.c, f.qexp, f.yexp, work);
        } else {
            fac = JacobiSeries::monomial(CycQ::one(), Rational(0), Half(0), work);
            long long fden = lllcm(1, static_cast<long long>(f.qexp.den()));
            fac = fac.rescaled(fden);
            fac.add_term(checked_ll(f.qexp, fden, "product_expand"), f.yexp.num2, -f.c);
            fac.mutable_window().ycap = std::max(Half(0), f.yexp);
            fac.mutable_window().yfloor = std::min(Half(0), f.yexp);
            fac.mutable_window().ytotal = true;
        }
        acc = acc * fac;
    }
    acc = acc.monomial_mul(pre_c, pre_q, pre_y);
    return acc.restricted(w);
}

QSeries QSeries::rescaled(long long new_qden) const {
    if (new_qden == qden) return *this;
    if (new_qden % qden != 0) throw std::logic_error("QSeries::rescaled");
    QSeries out;
    out.qden = new_qden;
    long long k = new_qden / qden;
    for (const auto& [q, c] : terms) out.terms.emplace(q * k, c);
    return out;
}

void QSeries::add_term(long long qnum, const CycQ& c) {
    if (c.is_zero()) return;
    auto it = terms.find(qnum);
    if (it == terms.end()) {
        terms.emplace(qnum, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

bool operator==(const QSeries& a, const QSeries& b) {
    long long den = lllcm(a.qden, b.qden);
    QSeries aa = a.rescaled(den);
    QSeries bb = b.rescaled(den);
    return aa.terms == bb.terms;
}

std::string coeff_to_json(const CycQ& c) {
    std::ostringstream os;
    os << "{\"order\": " << c.order() << ", \"coords\": [";
    for (std::size_t i = 0; i < c.coords().size(); ++i) {
        if (i) os << ", ";
        os << '"' << c.coords()[i].str() << '"';
    }
    os << "]}";
    return os.str();
}

std::string to_json(const JacobiSeries& s) {
    std::ostringstream os;
    const auto& w = s.window();
    os << "{\"qden\": " << s.qden() << ", \"window\": {\"qmax\": \"" << w.qmax.str()
       << "\", \"yfloor2\": " << w.yfloor.num2 << ", \"ycap2\": " << w.ycap.num2
       << ", \"ytotal\": " << (w.ytotal ? "true" : "false") << "}, \"terms\": [";
    // sorted by q ascending then y descending
    bool first = true;
    auto it = s.terms().begin();
    while (it != s.terms().end()) {
        long long qn = it->first.first;
        auto hi = s.terms().upper_bound({qn, std::numeric_limits<long long>::max()});
        std::vector<JacobiSeries::TermMap::const_iterator> slice;
        for (; it != hi; ++it) slice.push_back(it);
        for (auto rit = slice.rbegin(); rit != slice.rend(); ++rit) {
            if (!first) os << ", ";
            first = false;
            os << "{\"q\": \"" << Rational((*rit)->first.first, s.qden()).str()
               << "\", \"y2\": " << (*rit)->first.second
               << ", \"coeff\": " << coeff_to_json((*rit)->second) << "}";
        }
    }
    os << "]}";
    return os.str();
}

} // namespace umbral

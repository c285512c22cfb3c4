#include "umbral/cyclotomic.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace umbral {

namespace {

// ---- integer polynomial helpers (ascending-degree coefficient vectors) ----

// Exact division of integer polynomials; remainder must vanish.
std::vector<Int> exact_div(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> rem = a;
    assert(!b.empty() && b.back() == 1); // divisors here are monic
    if (rem.size() < b.size()) throw std::logic_error("exact_div: degree underflow");
    std::vector<Int> quot(rem.size() - b.size() + 1);
    for (auto i = static_cast<long long>(quot.size()) - 1; i >= 0; --i) {
        Int c = rem[i + b.size() - 1];
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw std::logic_error("exact_div: nonzero remainder");
    return quot;
}

struct OrderData {
    unsigned n = 1;
    unsigned phi = 1;
    std::vector<Int> cyclo;                  // Phi_n, ascending, monic
    std::vector<std::vector<Int>> red_rows;  // x^{phi+j} mod Phi_n
    const std::vector<Int>& row(unsigned e) const { return red_rows[e - phi]; }
};

std::shared_mutex g_mutex;
std::map<unsigned, std::shared_ptr<const OrderData>> g_orders;

std::shared_ptr<const OrderData> order_data(unsigned n) {
    {
        std::shared_lock lk(g_mutex);
        auto it = g_orders.find(n);
        if (it != g_orders.end()) return it->second;
    }
    auto d = std::make_shared<OrderData>();
    d->n = n;
    d->cyclo = cyclotomic_polynomial(n);
    d->phi = static_cast<unsigned>(d->cyclo.size() - 1);
    // Rows x^e mod Phi_n for e in [phi, max(2 phi - 2, n - 1)]; enough for
    // schoolbook products and raw monomials zeta^e, e < n.
    unsigned top = std::max(2 * d->phi >= 2 ? 2 * d->phi - 2 : 0u, n >= 1 ? n - 1 : 0u);
    std::vector<Int> cur(d->phi); // x^{phi} mod Phi = -(Phi - x^phi)
    for (unsigned j = 0; j < d->phi; ++j) cur[j] = -d->cyclo[j];
    for (unsigned e = d->phi; e <= top; ++e) {
        d->red_rows.push_back(cur);
        // multiply by x, reduce the spill at degree phi
        Int spill = cur.empty() ? Int(0) : cur.back();
        for (unsigned j = d->phi; j-- > 1;) cur[j] = cur[j - 1];
        if (!cur.empty()) cur[0] = 0;
        if (spill != 0)
            for (unsigned j = 0; j < d->phi; ++j) cur[j] -= spill * d->cyclo[j];
    }
    std::unique_lock lk(g_mutex);
    auto [it, inserted] = g_orders.emplace(n, std::move(d));
    return it->second;
}

} // namespace

const std::vector<Int>& cyclotomic_polynomial(unsigned n) {
    static std::shared_mutex mx;
    static std::map<unsigned, std::vector<Int>> cache;
    if (n == 0) throw std::domain_error("cyclotomic_polynomial: n must be positive");
    {
        std::shared_lock lk(mx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1 divided by Phi_d for all proper divisors d of n.
    std::vector<Int> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) num = exact_div(num, cyclotomic_polynomial(d));
    std::unique_lock lk(mx);
    auto [it, inserted] = cache.emplace(n, std::move(num));
    return it->second;
}

unsigned euler_phi(unsigned n) {
    return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1);
}

// ---- CycQ ----

void CycQ::collapse() {
    if (order_ == 1) return;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return;
    Rational v = coords_.empty() ? Rational() : coords_[0];
    order_ = 1;
    coords_.assign(1, std::move(v));
}

namespace {

std::vector<Rational> reduce_poly(unsigned order, const std::vector<Rational>& poly) {
    auto d = order_data(order);
    std::vector<Rational> out(d->phi);
    for (std::size_t e = 0; e < poly.size(); ++e) {
        if (poly[e].is_zero()) continue;
        if (e < d->phi) {
            out[e] += poly[e];
        } else {
            const auto& row = d->row(static_cast<unsigned>(e));
            for (unsigned j = 0; j < d->phi; ++j)
                if (row[j] != 0) out[j] += poly[e] * Rational(row[j]);
        }
    }
    return out;
}

} // namespace

CycQ CycQ::from_poly(unsigned order, std::vector<Rational> poly) {
    CycQ r(raw{}, order, reduce_poly(order, poly));
    r.collapse();
    return r;
}

CycQ CycQ::root_of_unity(const Rational& x) {
    Rational f = x.frac();
    unsigned n = static_cast<unsigned>(f.den());
    long long k = static_cast<long long>(f.num());
    std::vector<Rational> poly(static_cast<std::size_t>(k) + 1);
    poly[static_cast<std::size_t>(k)] = Rational(1);
    return from_poly(n, std::move(poly));
}

bool CycQ::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycQ::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

const Rational& CycQ::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycQ: value is not rational");
    return coords_[0];
}

CycQ CycQ::embedded(unsigned new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0)
        throw std::domain_error("CycQ::embedded: order does not divide new order");
    unsigned k = new_order / order_;
    // zeta_N^i -> zeta_{N'}^{ik}; the requested order is kept (no collapse),
    // so the result really is expressed in Q(zeta_{new_order})
    std::vector<Rational> poly(static_cast<std::size_t>(order_ - 1) * k + 1);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) poly[i * k] = coords_[i];
    return CycQ(raw{}, new_order, reduce_poly(new_order, poly));
}

CycQ CycQ::operator-() const {
    CycQ r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

CycQ operator+(const CycQ& a, const CycQ& b) {
    unsigned n = static_cast<unsigned>(lllcm(a.order_, b.order_));
    if (n != a.order_) return a.embedded(n) + b.embedded(n);
    if (n != b.order_) return a + b.embedded(n);
    CycQ r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
    r.collapse();
    return r;
}

CycQ operator-(const CycQ& a, const CycQ& b) { return a + (-b); }

CycQ operator*(const CycQ& a, const CycQ& b) {
    // rational fast paths keep the bulk of series arithmetic at order 1
    if (a.order_ == 1) return b.times(a.coords_[0]);
    if (b.order_ == 1) return a.times(b.coords_[0]);
    unsigned n = static_cast<unsigned>(lllcm(a.order_, b.order_));
    if (n != a.order_ || n != b.order_) return a.embedded(n) * b.embedded(n);
    std::vector<Rational> poly(2 * a.coords_.size() - 1);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
        if (a.coords_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coords_.size(); ++j) {
            if (b.coords_[j].is_zero()) continue;
            poly[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    return CycQ::from_poly(n, std::move(poly));
}

CycQ CycQ::times(const Rational& r) const {
    if (r.is_zero()) return CycQ::zero();
    CycQ out = *this;
    for (auto& c : out.coords_) c *= r;
    return out;
}

CycQ CycQ::inverse() const {
    if (is_zero()) throw std::domain_error("CycQ: inverse of zero");
    if (order_ == 1) return CycQ(coords_[0].inverse());
    // extended Euclid for gcd(f, Phi_N) = 1 in Q[x]
    const auto d = order_data(order_);
    std::vector<Rational> r0(d->cyclo.begin(), d->cyclo.end());
    std::vector<Rational> r1(coords_);
    while (!r1.empty() && r1.back().is_zero()) r1.pop_back();
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)}; // coeffs of f
    auto deg = [](const std::vector<Rational>& p) {
        return static_cast<long long>(p.size()) - 1;
    };
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rational> q(deg(r0) - deg(r1) + 1);
        std::vector<Rational> rem = r0;
        for (auto i = static_cast<long long>(q.size()) - 1; i >= 0; --i) {
            Rational c = rem[i + deg(r1)] / r1.back();
            q[i] = c;
            if (c.is_zero()) continue;
            for (long long j = 0; j <= deg(r1); ++j) rem[i + j] -= c * r1[j];
        }
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        // s2 = s0 - q s1
        std::vector<Rational> s2(std::max(s0.size(), q.size() + s1.size() - 1));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        while (!s2.empty() && s2.back().is_zero()) s2.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("CycQ::inverse: common factor with Phi_N");
    Rational unit = r1[0].inverse();
    std::vector<Rational> res(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) res[i] = s1[i] * unit;
    return from_poly(order_, std::move(res));
}

CycQ CycQ::conj() const {
    if (order_ == 1) return *this;
    // zeta^i -> zeta^{n-i}
    std::vector<Rational> poly(order_);
    if (!coords_[0].is_zero()) poly[0] = coords_[0];
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) poly[order_ - i] = coords_[i];
    return from_poly(order_, std::move(poly));
}

CycQ CycQ::pow(long long k) const {
    if (k == 0) return CycQ::one();
    if (k < 0) return inverse().pow(-k);
    CycQ base = *this;
    CycQ acc = CycQ::one();
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

bool operator==(const CycQ& a, const CycQ& b) {
    if (a.order_ == b.order_) return a.coords_ == b.coords_;
    unsigned n = static_cast<unsigned>(lllcm(a.order_, b.order_));
    return a.embedded(n).coords_ == b.embedded(n).coords_;
}

std::string CycQ::str() const {
    if (order_ == 1) return coords_[0].str();
    std::string s = "(";
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        if (!first) s += " + ";
        first = false;
        s += coords_[i].str();
        if (i >= 1) s += "*z" + std::to_string(order_) + "^" + std::to_string(i);
    }
    if (first) s += "0";
    s += ")";
    return s;
}

std::complex<double> CycQ::approx() const {
    std::complex<double> z(0.0, 0.0);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        double arg = 2.0 * std::numbers::pi * static_cast<double>(i) / order_;
        z += coords_[i].approx() * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return z;
}

} // namespace umbral

#include "flowinc/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowinc {

UPoly::UPoly(RationalVector coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    RationalVector out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Rational UPoly::evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    RationalVector d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * k;
    return UPoly(std::move(d));
}

UPoly UPoly::compose(const UPoly& inner) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + UPoly::constant(*it);
    return acc;
}

UPoly UPoly::taylor_shift(const Rational& shift) const {
    RationalVector a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += shift * a[k];
    return UPoly(std::move(a));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / leading());
}

UPoly UPoly::primitive() const {
    if (is_zero()) return *this;
    Integer l(1), g(0);
    for (auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    RationalVector out;
    out.reserve(c_.size());
    for (auto& x : c_) {
        Rational y = x * l;
        out.push_back(y);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
    }
    if (c_.back() < 0) g = -g;
    for (auto& y : out) y /= g;
    return UPoly(std::move(out));
}

std::string UPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (!s.empty()) s += " + ";
        s += flowinc::to_string(c_[k]);
        if (k) s += std::string("*") + var + "^" + std::to_string(k);
    }
    return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly division by zero");
    RationalVector r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    RationalVector q(a.degree() - db + 1, Rational(0));
    const Rational inv = 1 / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k] == 0) continue;
        Rational f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive();
    }
    return a.monic();
}

Bezout extended_gcd(const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly s0 = UPoly::constant(1), s1;
    UPoly t0, t1 = UPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.is_zero() ? p : UPoly::constant(1);
    UPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.primitive();
}

Rational resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    int m = a.degree(), n = b.degree();
    if (n == 0) {
        Rational r(1);
        for (int i = 0; i < m; ++i) r *= b.leading();
        return r;
    }
    if (m == 0) {
        Rational r(1);
        for (int i = 0; i < n; ++i) r *= a.leading();
        return r;
    }
    if (m < n) {
        Rational r = resultant(b, a);
        return ((m * n) % 2) ? Rational(-r) : r;
    }
    UPoly r = divmod(a, b).second;
    if (r.is_zero()) return Rational(0);
    Rational f(1);
    for (int i = 0; i < m - r.degree(); ++i) f *= b.leading();
    if ((m * n) % 2) f = -f;
    return f * resultant(b, r);
}

UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    // Newton divided differences.
    const std::size_t n = xs.size();
    RationalVector dd(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UPoly acc;
    for (std::size_t k = n; k-- > 0;) acc = acc * UPoly::linear(-xs[k], 1) + UPoly::constant(dd[k]);
    return acc;
}

unsigned descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("descartes_bound: zero polynomial");
    UPoly q = p.compose(UPoly::linear(lo, hi - lo));
    RationalVector rev(q.coeffs().rbegin(), q.coeffs().rend());
    UPoly r = UPoly(std::move(rev)).taylor_shift(1);
    unsigned changes = 0;
    int last = 0;
    for (auto& c : r.coeffs()) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Rational cauchy_bound(const UPoly& p) {
    Rational m(0);
    const Rational lc = abs(p.leading());
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeffs()[k]) / lc));
    return m + 1;
}

namespace {

void isolate(const UPoly& p, const Rational& a, const Rational& b, std::vector<RootInterval>& out) {
    unsigned v = descartes_bound(p, a, b);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({a, b});
        return;
    }
    Rational m = (a + b) / 2;
    isolate(p, a, m, out);
    if (p.evaluate(m) == 0) out.push_back({m, m});
    isolate(p, m, b, out);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<RootInterval> out;
    UPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return out;
    Rational b = cauchy_bound(sf);
    isolate(sf, -b, b, out);
    for (auto& iv : out) {
        if (iv.exact()) continue;
        // Move endpoints off neighbouring exact roots.
        while (sf.evaluate(iv.lo) == 0 || sf.evaluate(iv.hi) == 0) {
            Rational m = (iv.lo + iv.hi) / 2;
            if (sf.evaluate(m) == 0) {
                iv = {m, m};
                break;
            }
            if (descartes_bound(sf, iv.lo, m) == 1)
                iv.hi = m;
            else
                iv.lo = m;
        }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

std::pair<Rational, Rational> interval_evaluate(const UPoly& p, const Rational& lo, const Rational& hi) {
    Rational a(0), b(0);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        Rational c1 = a * lo, c2 = a * hi, c3 = b * lo, c4 = b * hi;
        a = std::min({c1, c2, c3, c4}) + *it;
        b = std::max({c1, c2, c3, c4}) + *it;
    }
    return {a, b};
}

}  // namespace flowinc

#include "flowinc/algebraic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flowinc {

AlgebraicNumber::AlgebraicNumber(const Rational& q) : poly_(UPoly::linear(-q, 1)), lo_(q), hi_(q) {}

AlgebraicNumber::AlgebraicNumber(const UPoly& poly, const RootInterval& iv) : lo_(iv.lo), hi_(iv.hi) {
    if (iv.exact())
        poly_ = UPoly::linear(-iv.lo, 1);
    else
        poly_ = squarefree_part(poly).primitive();
}

const Rational& AlgebraicNumber::rational() const {
    if (!is_rational()) throw std::logic_error("AlgebraicNumber::rational on an irrational value");
    return lo_;
}

void AlgebraicNumber::refine() const {
    if (is_rational()) return;
    Rational m = (lo_ + hi_) / 2;
    Rational v = poly_.evaluate(m);
    if (v == 0) {
        lo_ = hi_ = m;
        poly_ = UPoly::linear(-m, 1);
        return;
    }
    if (sgn(v) == sgn(poly_.evaluate(lo_)))
        lo_ = m;
    else
        hi_ = m;
}

void AlgebraicNumber::refine_below(const Rational& width) const {
    while (!is_rational() && hi_ - lo_ >= width) refine();
}

int AlgebraicNumber::sign_of(const UPoly& f) const {
    if (f.is_zero()) return 0;
    if (is_rational()) return sgn(f.evaluate(lo_));
    UPoly g = gcd(poly_, f);
    if (g.degree() >= 1 && sgn(g.evaluate(lo_)) * sgn(g.evaluate(hi_)) < 0) return 0;
    while (true) {
        if (is_rational()) return sgn(f.evaluate(lo_));
        Rational flo = f.evaluate(lo_);
        if (flo != 0 && descartes_bound(f, lo_, hi_) == 0) return sgn(flo);
        refine();
    }
}

bool AlgebraicNumber::try_rationalize() const {
    if (is_rational()) return true;
    UPoly p = poly_.primitive();
    Integer lc = p.leading().get_num();
    if (mpz_sizeinbase(lc.get_mpz_t(), 2) > 512) return false;
    refine_below(Rational(Integer(1), lc));
    if (is_rational()) return true;
    Rational scaled = lo_ * lc;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational r(Integer(k + 1), lc);
    r.canonicalize();
    if (r > lo_ && r < hi_ && p.evaluate(r) == 0) {
        lo_ = hi_ = r;
        poly_ = UPoly::linear(-r, 1);
        return true;
    }
    return false;
}

double AlgebraicNumber::approx() const {
    if (is_rational()) return lo_.get_d();
    Rational width = (abs(lo_) + 1) / Rational(Integer(1) << 60);
    refine_below(width);
    return Rational((lo_ + hi_) / 2).get_d();
}

std::string AlgebraicNumber::to_string() const {
    if (is_rational()) return flowinc::to_string(lo_);
    return "root[" + poly_.to_string() + ";" + flowinc::to_string(lo_) + ";" + flowinc::to_string(hi_) + "]";
}

namespace {

// Strictly separated: returns -1/1, or 0 when the intervals still overlap.
int separated(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    bool both_exact = a.is_rational() && b.is_rational();
    if (a.hi() <= b.lo() && !(both_exact && a.hi() == b.lo())) return -1;
    if (b.hi() <= a.lo() && !(both_exact && b.hi() == a.lo())) return 1;
    return 0;
}

bool equal_to_rational(const AlgebraicNumber& a, const Rational& q) {
    if (a.is_rational()) return a.rational() == q;
    return q > a.lo() && q < a.hi() && a.poly().evaluate(q) == 0;
}

}  // namespace

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational()) return cmp(a.rational(), b.rational());
    if (int s = separated(a, b)) return s;
    if (a.is_rational() && equal_to_rational(b, a.rational())) return 0;
    if (b.is_rational() && equal_to_rational(a, b.rational())) return 0;
    bool maybe_equal = false;
    UPoly g;
    if (!a.is_rational() && !b.is_rational()) {
        g = gcd(a.poly(), b.poly());
        maybe_equal = g.degree() >= 1 && a.sign_of(g) == 0 && b.sign_of(g) == 0;
    }
    while (true) {
        if (int s = separated(a, b)) return s;
        if (a.is_rational() && equal_to_rational(b, a.rational())) return 0;
        if (b.is_rational() && equal_to_rational(a, b.rational())) return 0;
        if (maybe_equal && !a.is_rational() && !b.is_rational()) {
            Rational lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
            if (descartes_bound(g, lo, hi) == 1) return 0;
        }
        a.refine();
        b.refine();
    }
}

AlgebraicNumber image_of(const AlgebraicNumber& alpha, const UPoly& f) {
    if (alpha.is_rational()) return AlgebraicNumber(f.evaluate(alpha.rational()));
    if (f.degree() <= 0) return AlgebraicNumber(f[0]);
    const UPoly& m = alpha.poly();
    const int d = m.degree();
    RationalVector xs, ys;
    for (int j = 0; j <= d; ++j) {
        xs.emplace_back(j);
        ys.push_back(resultant(m, UPoly::constant(Rational(j)) - f));
    }
    UPoly r = interpolate(xs, ys);
    auto roots = real_roots(r);
    while (true) {
        auto [elo, ehi] = interval_evaluate(f, alpha.lo(), alpha.hi());
        std::size_t hits = 0, which = 0;
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const auto& z = roots[k];
            bool meets = z.is_rational() ? (z.lo() >= elo && z.lo() <= ehi) : (z.hi() > elo && z.lo() < ehi);
            if (meets) {
                ++hits;
                which = k;
            }
        }
        if (hits == 1) {
            AlgebraicNumber out = roots[which];
            out.try_rationalize();
            return out;
        }
        if (hits == 0) throw std::logic_error("image_of: enclosure missed every root");
        alpha.refine();
        for (auto& z : roots) {
            bool meets = z.is_rational() ? (z.lo() >= elo && z.lo() <= ehi) : (z.hi() > elo && z.lo() < ehi);
            if (meets) z.refine();
        }
    }
}

std::vector<AlgebraicNumber> real_roots(const UPoly& p) {
    std::vector<AlgebraicNumber> out;
    UPoly sf = squarefree_part(p);
    for (auto& iv : isolate_real_roots(sf)) out.emplace_back(sf, iv);
    return out;
}

}  // namespace flowinc

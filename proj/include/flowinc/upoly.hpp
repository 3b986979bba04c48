#pragma once

#include "flowinc/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flowinc {

/// Dense univariate polynomial over the rationals; coeffs()[k] multiplies x^k.
/// The leading stored coefficient is never zero.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(RationalVector coeffs);
    UPoly(std::initializer_list<Rational> coeffs) : UPoly(RationalVector(coeffs)) {}

    static UPoly constant(const Rational& c) { return UPoly({c}); }
    static UPoly x() { return UPoly({Rational(0), Rational(1)}); }
    /// a + b x
    static UPoly linear(const Rational& a, const Rational& b) { return UPoly({a, b}); }

    const RationalVector& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    UPoly& operator*=(const Rational& s);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
    friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly operator-() const;
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    Rational evaluate(const Rational& x) const;
    UPoly derivative() const;
    /// this(inner(x))
    UPoly compose(const UPoly& inner) const;
    /// this(x + shift)
    UPoly taylor_shift(const Rational& shift) const;
    UPoly monic() const;
    /// Scaled to coprime integer coefficients with positive leading coefficient.
    UPoly primitive() const;

    std::string to_string(char var = 'x') const;

private:
    void trim();
    RationalVector c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);
/// Extended Euclid: returns (g, s, t) with s a + t b = g, g monic.
struct Bezout {
    UPoly g, s, t;
};
Bezout extended_gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);
/// Exact resultant of two univariate polynomials.
Rational resultant(const UPoly& a, const UPoly& b);

/// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Number of sign variations of p transformed to (lo, hi): the Descartes bound
/// on roots in the open interval, exact when 0 or 1.
unsigned descartes_bound(const UPoly& p, const Rational& lo, const Rational& hi);

/// Bound B with every real root in (-B, B).
Rational cauchy_bound(const UPoly& p);

/// Closed interval; lo == hi marks an exact rational root.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
};

/// Isolates all real roots of a nonzero polynomial (multiplicities collapsed),
/// sorted ascending. Open intervals hold exactly one root of the square-free
/// part and their endpoints are not roots.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);

/// Interval image of p over [lo, hi] by exact interval Horner evaluation.
std::pair<Rational, Rational> interval_evaluate(const UPoly& p, const Rational& lo, const Rational& hi);

}  // namespace flowinc

#pragma once

#include "flowinc/upoly.hpp"

#include <string>

namespace flowinc {

/// A real algebraic number: a square-free defining polynomial plus an
/// isolating interval. When lo == hi the number is that exact rational.
/// Otherwise the open interval (lo, hi) holds exactly one root of poly and
/// poly(lo), poly(hi) are nonzero with opposite signs.
class AlgebraicNumber {
public:
    AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
    explicit AlgebraicNumber(const Rational& q);
    /// Takes an isolating interval returned by isolate_real_roots(poly).
    AlgebraicNumber(const UPoly& poly, const RootInterval& iv);

    bool is_rational() const { return lo_ == hi_; }
    const Rational& rational() const;  // requires is_rational()
    const UPoly& poly() const { return poly_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    /// Halves the isolating interval (may discover exactness).
    void refine() const;
    void refine_below(const Rational& width) const;

    /// Exact sign of f at this number.
    int sign_of(const UPoly& f) const;

    /// Converts to an exact rational when the number is rational and the
    /// defining polynomial's leading coefficient is modest. Returns success.
    bool try_rationalize() const;

    double approx() const;
    /// "p/q" for rationals, otherwise "root[<poly>;lo;hi]".
    std::string to_string() const;

    friend int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) == 0; }
    friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; }

private:
    // Refinement never changes the number, only its description.
    mutable UPoly poly_;
    mutable Rational lo_, hi_;
};

/// f(alpha) as an algebraic number.
AlgebraicNumber image_of(const AlgebraicNumber& alpha, const UPoly& f);

/// All real roots of p as algebraic numbers, ascending.
std::vector<AlgebraicNumber> real_roots(const UPoly& p);

}  // namespace flowinc

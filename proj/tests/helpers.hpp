#pragma once

#include "flowinc/poly.hpp"
#include "flowinc/vector_field.hpp"

#include <random>

namespace testing {

using flowinc::Poly;
using flowinc::Rational;
using flowinc::VectorField;

inline Rational q(long p, long d = 1) {
    Rational r{flowinc::Integer(p), flowinc::Integer(d)};
    r.canonicalize();
    return r;
}

inline Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
inline Poly cst(std::size_t n, const Rational& c) { return Poly::constant(n, c); }

/// Random polynomial in n variables, total degree <= deg, small integer coefficients.
inline Poly random_poly(std::mt19937_64& rng, std::size_t n, unsigned deg, int terms = 4) {
    std::uniform_int_distribution<int> coef(-3, 3);
    Poly p(n);
    for (int k = 0; k < terms; ++k) {
        flowinc::Exponent ex(n, 0);
        unsigned budget = deg;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned a = std::uniform_int_distribution<unsigned>(0, budget)(rng);
            ex[i] = a;
            budget -= a;
        }
        int c = coef(rng);
        if (c) p += Poly::monomial(ex, Rational(c));
    }
    return p;
}

inline VectorField random_field(std::mt19937_64& rng, std::size_t n, unsigned deg) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(random_poly(rng, n, deg));
    return VectorField(comps);
}

}  // namespace testing

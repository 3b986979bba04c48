#pragma once

#include "flowinc/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowinc {

using Exponent = std::vector<std::uint32_t>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order, largest first, so a Poly iterates from its leading term.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored and every exponent vector has length
/// nvars(), so two polynomials are equal iff their term maps are equal.
class Poly {
public:
    using TermMap = std::map<Exponent, Rational, GrlexGreater>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rational& c);
    static Poly variable(std::size_t nvars, std::size_t index);
    static Poly monomial(Exponent e, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Exponent& e) const;

    /// -1 for the zero polynomial.
    int total_degree() const;
    unsigned degree_in(std::size_t var) const;

    void add_term(const Exponent& e, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    Poly pow(unsigned k) const;
    Poly derivative(std::size_t var) const;

    Rational evaluate(std::span<const Rational> point) const;

    /// Substitutes subs[i] for variable i; all subs share one target nvars.
    Poly compose(std::span<const Poly> subs) const;

    /// Re-embeds into `new_nvars` variables, variable i becoming var_map[i].
    Poly embed(std::size_t new_nvars, std::span<const std::size_t> var_map) const;

    /// Canonical text: terms in grlex order joined by " + ", each "p/q*x1^a*x3^b".
    std::string to_string() const;
    static Poly parse(std::string_view text, std::size_t nvars);

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Evaluates p with variable i replaced by x[i] in any commutative ring
/// supporting +, * and right-multiplication by Rational.
template <class Ring>
Ring evaluate_in(const Poly& p, std::span<const Ring> x, const Ring& one, const Ring& zero) {
    std::vector<std::vector<Ring>> powers(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        unsigned d = p.degree_in(i);
        powers[i].reserve(d + 1);
        powers[i].push_back(one);
        for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * x[i]);
    }
    Ring acc = zero;
    for (const auto& [e, c] : p.terms()) {
        Ring term = one * c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * powers[i][e[i]];
        acc = acc + term;
    }
    return acc;
}

}  // namespace flowinc

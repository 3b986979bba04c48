#pragma once

#include "flowinc/poly.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowinc {

/// Polynomial vector field sum_i components[i] d/dx_i on R^n.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<Poly> components);
    static VectorField zero(std::size_t n);
    /// The constant field d/dx_index.
    static VectorField coordinate(std::size_t n, std::size_t index);

    std::size_t nvars() const { return comps_.size(); }
    const std::vector<Poly>& components() const { return comps_; }
    const Poly& operator[](std::size_t i) const { return comps_[i]; }
    bool is_zero() const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Rational& c, VectorField a);
    /// Multiplies every component by the function f.
    friend VectorField operator*(const Poly& f, VectorField a);
    VectorField operator-() const;
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }

    RationalVector evaluate(std::span<const Rational> point) const;

    /// "[p1; p2; ...]" with each component in canonical polynomial form.
    std::string to_string() const;
    static VectorField parse(std::string_view text, std::size_t nvars);

private:
    std::vector<Poly> comps_;
};

/// Xf = sum_i X^i df/dx_i.
Poly apply_field(const VectorField& X, const Poly& f);
/// Applies X k times.
Poly apply_field_power(const VectorField& X, const Poly& f, unsigned k);

/// [X,Y]^i = X(Y^i) - Y(X^i).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Letters are 1-based generator indices.
struct BracketWord {
    std::vector<unsigned> letters;
    std::string to_string() const;
    friend bool operator==(const BracketWord&, const BracketWord&) = default;
};

struct BracketValue {
    VectorField field;
    std::vector<unsigned> degree;  // letter occurrence counts
};

/// Right-nested bracket [X_{w1},[X_{w2},[...,X_{wk}]]].
BracketValue iterated_bracket(const std::vector<VectorField>& generators, const BracketWord& w);

struct GeneratedAlgebra {
    std::vector<std::pair<VectorField, BracketWord>> basis;
    unsigned step = 0;          // largest length with a nonzero bracket, valid when !cap_exceeded
    bool cap_exceeded = false;  // some bracket of length step_cap + 1 is nonzero
    std::size_t dimension() const { return basis.size(); }
};

GeneratedAlgebra generated_algebra(const std::vector<VectorField>& generators, unsigned step_cap = 8);

struct HormanderResult {
    std::size_t rank = 0;
    std::optional<unsigned> order;  // least bracket length reaching full rank
};

HormanderResult hormander_check(const std::vector<VectorField>& fields, std::span<const Rational> point,
                                unsigned order_cap);

struct ExponentResult {
    RationalVector p;
    bool degenerate = false;  // total letter count was 1, so every numerator vanished
};

/// p_j = (total letters - 1) / (occurrences of j across all words).
ExponentResult continuum_exponents(const std::vector<BracketWord>& words, unsigned m);

}  // namespace flowinc

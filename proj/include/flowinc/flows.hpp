#pragma once

#include "flowinc/upoly.hpp"
#include "flowinc/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flowinc {

/// Polynomial map R^source_dim -> R^components.size().
struct ProjectionMap {
    std::size_t source_dim = 0;
    std::vector<Poly> components;

    ProjectionMap() = default;
    ProjectionMap(std::size_t source, std::vector<Poly> comps);
    std::size_t target_dim() const { return components.size(); }
    RationalVector apply(std::span<const Rational> x) const;
};

/// Parametrized polynomial curve t -> (param[0](t), ..., param[n-1](t)).
/// A curve with constant param is a legal one-point curve.
struct Curve {
    std::string id;
    std::string family_tag;
    std::size_t ambient_dim = 0;
    std::vector<UPoly> param;
    std::optional<RationalVector> generator_coords;
    RationalVector base_point;

    bool is_singleton() const;
    /// Largest component degree (0 for singletons).
    int degree() const;
};

class NonPolynomialFlow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The flow (x, t) -> e^{tX}(x) as polynomials in nvars + 1 variables, t last.
/// Throws NonPolynomialFlow when some X^k x_i fails to vanish for k <= term_cap.
std::vector<Poly> flow_map(const VectorField& X, unsigned term_cap = 16);

/// e^{tX}(base) as a curve in t.
Curve exp_flow(const VectorField& X, std::span<const Rational> base, unsigned term_cap = 16);

/// Flow of sum_k coords[k] * basis[k] through base, tagged and carrying the coords.
Curve flow_curve(const std::vector<VectorField>& basis, std::span<const Rational> coords, std::span<const Rational> base,
                 std::string id, std::string tag, unsigned term_cap = 16);

/// Exact check that c is the flow of its generator through its base point.
bool verify_flow(const Curve& c, const std::vector<VectorField>& basis, unsigned term_cap = 16);

Curve project_curve(const Curve& c, const ProjectionMap& pi);
RationalVector eval_curve(const Curve& c, const Rational& t);
/// c(u(t)); base point becomes c(u(0)).
Curve reparametrize(const Curve& c, const UPoly& u);

/// e^{(s+u)X} = e^{sX} e^{uX} as a polynomial identity.
bool flow_group_law_holds(const VectorField& X, unsigned term_cap = 16);
/// pi o e^{tX} is independent of t, symbolically.
bool projection_invariant(const VectorField& X, const ProjectionMap& pi, unsigned term_cap = 16);

/// Line record "id|tag|dim|base|gen or -|c0,c1,..;c0,c1,..". Throws ParseError.
std::string to_record(const Curve& c);
Curve from_record(std::string_view line, std::size_t line_no = 0);

}  // namespace flowinc

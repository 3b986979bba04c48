#include "flowinc/flows.hpp"

#include <stdexcept>

namespace flowinc {

ProjectionMap::ProjectionMap(std::size_t source, std::vector<Poly> comps)
    : source_dim(source), components(std::move(comps)) {
    for (auto& c : components)
        if (c.nvars() != source_dim) throw std::invalid_argument("ProjectionMap: component nvars mismatch");
}

RationalVector ProjectionMap::apply(std::span<const Rational> x) const {
    RationalVector out;
    for (auto& c : components) out.push_back(c.evaluate(x));
    return out;
}

bool Curve::is_singleton() const {
    for (auto& p : param)
        if (p.degree() > 0) return false;
    return true;
}

int Curve::degree() const {
    int d = 0;
    for (auto& p : param) d = std::max(d, p.degree());
    return d;
}

namespace {

// X^k x_i for k = 0.. until zero, or throws.
std::vector<Poly> lie_series(const VectorField& X, std::size_t i, unsigned term_cap) {
    const std::size_t n = X.nvars();
    std::vector<Poly> out;
    Poly g = Poly::variable(n, i);
    for (unsigned k = 0; k <= term_cap; ++k) {
        if (g.is_zero()) return out;
        out.push_back(g);
        g = apply_field(X, g);
    }
    throw NonPolynomialFlow("non-polynomial flow: X^k x" + std::to_string(i + 1) + " nonzero up to k = " +
                            std::to_string(term_cap));
}

}  // namespace

std::vector<Poly> flow_map(const VectorField& X, unsigned term_cap) {
    const std::size_t n = X.nvars();
    std::vector<std::size_t> embed_map(n);
    for (std::size_t i = 0; i < n; ++i) embed_map[i] = i;
    const Poly t = Poly::variable(n + 1, n);
    std::vector<Poly> out;
    for (std::size_t i = 0; i < n; ++i) {
        Poly acc(n + 1);
        auto series = lie_series(X, i, term_cap);
        Poly tk = Poly::constant(n + 1, Rational(1));
        for (unsigned k = 0; k < series.size(); ++k) {
            Rational inv_fact(Integer(1), factorial(k));
            acc += series[k].embed(n + 1, embed_map) * tk * inv_fact;
            tk = tk * t;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Curve exp_flow(const VectorField& X, std::span<const Rational> base, unsigned term_cap) {
    const std::size_t n = X.nvars();
    if (base.size() != n) throw std::invalid_argument("exp_flow: base point dimension mismatch");
    Curve c;
    c.ambient_dim = n;
    c.base_point.assign(base.begin(), base.end());
    for (std::size_t i = 0; i < n; ++i) {
        auto series = lie_series(X, i, term_cap);
        RationalVector coeffs;
        for (unsigned k = 0; k < series.size(); ++k) coeffs.push_back(series[k].evaluate(base) / Rational(factorial(k)));
        c.param.emplace_back(std::move(coeffs));
    }
    return c;
}

namespace {

VectorField combine(const std::vector<VectorField>& basis, std::span<const Rational> coords) {
    if (basis.empty() || coords.size() != basis.size()) throw std::invalid_argument("flow_curve: coords/basis size mismatch");
    VectorField X = VectorField::zero(basis[0].nvars());
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (coords[k] != 0) X += coords[k] * basis[k];
    return X;
}

}  // namespace

Curve flow_curve(const std::vector<VectorField>& basis, std::span<const Rational> coords, std::span<const Rational> base,
                 std::string id, std::string tag, unsigned term_cap) {
    Curve c = exp_flow(combine(basis, coords), base, term_cap);
    c.id = std::move(id);
    c.family_tag = std::move(tag);
    c.generator_coords = RationalVector(coords.begin(), coords.end());
    return c;
}

bool verify_flow(const Curve& c, const std::vector<VectorField>& basis, unsigned term_cap) {
    if (c.param.size() != c.ambient_dim || c.base_point.size() != c.ambient_dim) return false;
    for (std::size_t i = 0; i < c.ambient_dim; ++i)
        if (c.param[i].evaluate(Rational(0)) != c.base_point[i]) return false;
    if (!c.generator_coords) return true;
    return exp_flow(combine(basis, *c.generator_coords), c.base_point, term_cap).param == c.param;
}

Curve project_curve(const Curve& c, const ProjectionMap& pi) {
    if (c.ambient_dim != pi.source_dim) throw std::invalid_argument("project_curve: dimension mismatch");
    Curve out;
    out.id = c.id;
    out.family_tag = c.family_tag + "~proj";
    out.ambient_dim = pi.target_dim();
    out.generator_coords = c.generator_coords;
    out.base_point = pi.apply(c.base_point);
    std::span<const UPoly> args(c.param);
    for (auto& comp : pi.components)
        out.param.push_back(evaluate_in<UPoly>(comp, args, UPoly::constant(Rational(1)), UPoly()));
    return out;
}

RationalVector eval_curve(const Curve& c, const Rational& t) {
    RationalVector out;
    out.reserve(c.param.size());
    for (auto& p : c.param) out.push_back(p.evaluate(t));
    return out;
}

Curve reparametrize(const Curve& c, const UPoly& u) {
    Curve out = c;
    for (auto& p : out.param) p = p.compose(u);
    out.base_point = eval_curve(c, u.evaluate(Rational(0)));
    return out;
}

bool flow_group_law_holds(const VectorField& X, unsigned term_cap) {
    const std::size_t n = X.nvars();
    auto phi = flow_map(X, term_cap);
    // Variables (x_1..x_n, s, u).
    const std::size_t m = n + 2;
    std::vector<Poly> lhs_sub, inner_sub;
    for (std::size_t i = 0; i < n; ++i) {
        lhs_sub.push_back(Poly::variable(m, i));
        inner_sub.push_back(Poly::variable(m, i));
    }
    lhs_sub.push_back(Poly::variable(m, n) + Poly::variable(m, n + 1));
    inner_sub.push_back(Poly::variable(m, n + 1));
    std::vector<Poly> outer_sub;
    for (std::size_t i = 0; i < n; ++i) outer_sub.push_back(phi[i].compose(inner_sub));
    outer_sub.push_back(Poly::variable(m, n));
    for (std::size_t i = 0; i < n; ++i)
        if (phi[i].compose(lhs_sub) != phi[i].compose(outer_sub)) return false;
    return true;
}

bool projection_invariant(const VectorField& X, const ProjectionMap& pi, unsigned term_cap) {
    const std::size_t n = X.nvars();
    if (pi.source_dim != n) throw std::invalid_argument("projection_invariant: dimension mismatch");
    auto phi = flow_map(X, term_cap);
    for (auto& comp : pi.components) {
        Poly composed = comp.compose(phi);
        if (composed.degree_in(n) != 0) return false;
    }
    return true;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

}  // namespace

std::string to_record(const Curve& c) {
    std::string s = c.id + "|" + c.family_tag + "|" + std::to_string(c.ambient_dim) + "|" + to_string(c.base_point) + "|";
    s += c.generator_coords ? to_string(*c.generator_coords) : std::string("-");
    s += "|";
    for (std::size_t i = 0; i < c.param.size(); ++i) {
        if (i) s += ";";
        s += c.param[i].is_zero() ? std::string("0") : to_string(c.param[i].coeffs());
    }
    return s;
}

Curve from_record(std::string_view line, std::size_t line_no) {
    auto f = split(line, '|');
    if (f.size() != 6) throw ParseError("curve record needs 6 '|'-separated fields, found " + std::to_string(f.size()), line_no);
    try {
        Curve c;
        c.id = std::string(f[0]);
        c.family_tag = std::string(f[1]);
        if (c.id.empty()) throw ParseError("empty curve id");
        std::size_t pos = 0;
        c.ambient_dim = std::stoul(std::string(f[2]), &pos);
        if (pos != f[2].size() || c.ambient_dim == 0) throw ParseError("bad dimension '" + std::string(f[2]) + "'");
        c.base_point = parse_rational_list(f[3]);
        if (f[4] != "-") c.generator_coords = parse_rational_list(f[4]);
        for (auto comp : split(f[5], ';')) c.param.emplace_back(parse_rational_list(comp));
        if (c.param.size() != c.ambient_dim || c.base_point.size() != c.ambient_dim)
            throw ParseError("component or base point count disagrees with dimension " + std::to_string(c.ambient_dim));
        for (std::size_t i = 0; i < c.ambient_dim; ++i)
            if (c.param[i].evaluate(Rational(0)) != c.base_point[i])
                throw ParseError("param at t=0 differs from base point in coordinate " + std::to_string(i + 1));
        return c;
    } catch (const ParseError& e) {
        if (e.line()) throw;
        throw ParseError(e.what(), line_no);
    } catch (const std::logic_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    }
}

}  // namespace flowinc

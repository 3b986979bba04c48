#include "flowinc/builtin_fields.hpp"

#include <stdexcept>

namespace flowinc::builtin {

namespace {

Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly cst(std::size_t n, const Rational& c) { return Poly::constant(n, c); }

const Rational half(1, 2);

}  // namespace

VectorField heisenberg_X() { return VectorField({cst(3, 1), Poly(3), -half * var(3, 1)}); }
VectorField heisenberg_Y() { return VectorField({Poly(3), cst(3, 1), half * var(3, 0)}); }
VectorField heisenberg_T() { return VectorField::coordinate(3, 2); }

VectorField heisenberg_omega(const Rational& w1, const Rational& w2) {
    return w1 * heisenberg_X() + w2 * heisenberg_Y();
}

ProjectionMap pi_X() { return ProjectionMap(3, {var(3, 1), var(3, 2) + half * var(3, 0) * var(3, 1)}); }
ProjectionMap pi_Y() { return ProjectionMap(3, {var(3, 0), var(3, 2) - half * var(3, 0) * var(3, 1)}); }

VectorField moment_X1(unsigned d) {
    if (d < 1) throw std::invalid_argument("moment lift needs d >= 1");
    return VectorField::coordinate(d + 1, d);
}

VectorField moment_X2(unsigned d) {
    if (d < 1) throw std::invalid_argument("moment lift needs d >= 1");
    const std::size_t n = d + 1;
    std::vector<Poly> c;
    for (unsigned i = 1; i <= d; ++i) c.push_back(-Rational(i) * var(n, d).pow(i - 1));
    c.push_back(cst(n, 1));
    return VectorField(std::move(c));
}

ProjectionMap moment_pi1(unsigned d) {
    std::vector<Poly> c;
    for (unsigned i = 0; i < d; ++i) c.push_back(var(d + 1, i));
    return ProjectionMap(d + 1, std::move(c));
}

ProjectionMap moment_pi2(unsigned d) {
    std::vector<Poly> c;
    for (unsigned i = 0; i < d; ++i) c.push_back(var(d + 1, i) + var(d + 1, d).pow(i + 1));
    return ProjectionMap(d + 1, std::move(c));
}

std::vector<UPoly> moment_gamma(unsigned d) {
    std::vector<UPoly> g;
    for (unsigned i = 1; i <= d; ++i) {
        RationalVector c(i + 1, Rational(0));
        c[i] = 1;
        g.emplace_back(std::move(c));
    }
    return g;
}

VectorField xray_X1(unsigned n) {
    if (n < 3) throw std::invalid_argument("X-ray lift needs n >= 3");
    return VectorField::coordinate(n, n - 2);
}

VectorField xray_X2(unsigned n) {
    if (n < 3) throw std::invalid_argument("X-ray lift needs n >= 3");
    const Poly s = var(n, n - 2), t = var(n, n - 1);
    std::vector<Poly> c;
    for (unsigned i = 1; i <= n - 2; ++i) c.push_back(-Rational(i) * s * t.pow(i - 1));
    c.push_back(Poly(n));
    c.push_back(cst(n, 1));
    return VectorField(std::move(c));
}

ProjectionMap xray_pi1(unsigned n) {
    std::vector<Poly> c;
    for (unsigned i = 0; i < n - 2; ++i) c.push_back(var(n, i));
    c.push_back(var(n, n - 1));
    return ProjectionMap(n, std::move(c));
}

ProjectionMap xray_pi2(unsigned n) {
    const Poly s = var(n, n - 2), t = var(n, n - 1);
    std::vector<Poly> c{s};
    for (unsigned i = 1; i <= n - 2; ++i) c.push_back(var(n, i - 1) + s * t.pow(i));
    return ProjectionMap(n, std::move(c));
}

}  // namespace flowinc::builtin

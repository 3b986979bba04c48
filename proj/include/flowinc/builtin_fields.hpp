#pragma once

#include "flowinc/flows.hpp"

namespace flowinc::builtin {

// First Heisenberg group, coordinates (x, y, t).
VectorField heisenberg_X();
VectorField heisenberg_Y();
VectorField heisenberg_T();
/// w1 X + w2 Y.
VectorField heisenberg_omega(const Rational& w1, const Rational& w2);
/// (y, t + xy/2), constant along X-flows.
ProjectionMap pi_X();
/// (x, t - xy/2), constant along Y-flows.
ProjectionMap pi_Y();

// Moment-curve lift on R^d x R, coordinates (x_1..x_d, t), gamma(t) = (t, t^2, ..., t^d).
VectorField moment_X1(unsigned d);
VectorField moment_X2(unsigned d);
ProjectionMap moment_pi1(unsigned d);
ProjectionMap moment_pi2(unsigned d);
/// gamma as a list of univariate polynomials.
std::vector<UPoly> moment_gamma(unsigned d);

// Restricted X-ray lift on R^{n-2} x R x R, coordinates (x, s, t), gamma = moment curve in R^{n-2}.
VectorField xray_X1(unsigned n);
VectorField xray_X2(unsigned n);
ProjectionMap xray_pi1(unsigned n);
ProjectionMap xray_pi2(unsigned n);

}  // namespace flowinc::builtin

#pragma once

#include "flowinc/flows.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace flowinc {

/// Kind plus kind-specific parameters, all given as text and validated by generate().
///
/// heisenberg_x      X-flows through (0,y,t), y in [y0,y1], t in [t0,t1]
/// heisenberg_y      Y-flows through (x,0,t), x in [x0,x1], t in [t0,t1]
/// heisenberg_omega  (m X + Y)-flows through (x,0,t) for each slope m in `slopes`
/// parabola_grid     u -> (u, a + b u + c u^2), (a,b,c) in [0,N^3]x[0,N^2]x[0,N]
/// moment_translates u -> y0 - gamma(u) in R^d, y0 in {0..k}^d; lift=1 keeps the R^{d+1} flow
/// xray              X_field-flows (field 1 or 2) through {0..N}^n
/// axis_parallel     lines along each axis through {0..k-1}^n; direction=i keeps one axis
/// point_grid        one-point curves on [0,N] x [0,3N^3]
/// custom_file       curves read from `path`
///
/// Grid kinds accept count=<c> to keep a seeded random subset of c members (order kept).
struct FamilySpec {
    std::string kind;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;

    bool has(const std::string& key) const { return params.count(key) > 0; }
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    RationalVector get_rationals(const std::string& key) const;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "key=value" lines, '#' comments; `kind` and `seed` are lifted out of params.
FamilySpec parse_family_spec(std::string_view text);
FamilySpec load_family_spec(const std::filesystem::path& path);

std::vector<Curve> generate(const FamilySpec& spec);

/// Bases (X, Y, T) for the Heisenberg kinds, (X1, X2) for moment and xray, coordinate fields for axis_parallel.
std::vector<VectorField> family_basis(const std::string& kind, unsigned dim);

/// Closed-form member count for grid kinds without `count`.
std::uint64_t grid_family_size(const FamilySpec& spec);

std::uint64_t squarefree_part(std::uint64_t c);

struct SquareTriples {
    std::uint64_t count = 0;
    std::vector<std::array<std::uint64_t, 3>> triples;  // (a, b, c), filled when requested
};

/// (a,b,c) in [0,N^3] x [0,N^2] x [0,N] with 4ac = b^2.
SquareTriples count_square_triples(std::uint64_t N, bool keep_list = true);

std::vector<Curve> load_family(const std::filesystem::path& path);
void save_family(const std::vector<Curve>& curves, const std::filesystem::path& path);

}  // namespace flowinc

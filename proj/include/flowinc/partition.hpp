#pragma once

#include "flowinc/flows.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowinc {

struct WeightedPoints {
    std::size_t dim = 0;
    std::vector<RationalVector> points;
    std::vector<std::uint64_t> weights;  // empty means all ones

    std::size_t size() const { return points.size(); }
    std::uint64_t weight(std::size_t i) const { return weights.empty() ? 1 : weights[i]; }
    std::uint64_t total_weight() const;
    /// Throws std::invalid_argument on length or weight violations.
    void validate() const;
};

/// The search budget ran out; a scale limit rather than a correctness failure.
class SearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Monomial exponents of total degree <= deg in `dim` variables, ascending by degree.
std::vector<Exponent> monomials_up_to(std::size_t dim, unsigned deg);

/// Nonzero polynomial of least degree <= max_degree vanishing at every point, if any.
std::optional<Poly> vanishing_poly(const WeightedPoints& P, unsigned max_degree);

/// Least d' with binom(d' + dim, dim) > classes.
unsigned cut_degree(std::size_t classes, std::size_t dim);

struct CutOptions {
    std::uint64_t seed = 1;
    std::size_t max_iterations = 200000;
    std::size_t max_points = 4096;   // per class
    std::size_t max_classes = 64;
};

/// Polynomial whose open positive and negative sides each carry at most half of every class's weight.
Poly ham_sandwich_cut(const std::vector<WeightedPoints>& classes, const CutOptions& opt = {});

struct SignClass {
    std::vector<std::size_t> indices;
    std::uint64_t weight = 0;
};

struct PartitionResult {
    std::vector<Poly> cuts;
    std::map<std::string, SignClass> classes;  // sign vector over cuts, e.g. "+-+"
    std::vector<std::size_t> wall;
    std::uint64_t wall_weight = 0;

    /// Degree of the product of the cuts.
    int degree() const;
    std::uint64_t max_class_weight() const;
    nlohmann::json to_json() const;
};

PartitionResult partition_points(const WeightedPoints& P, unsigned rounds, const CutOptions& opt = {});

/// Sum over rounds 1..j of cut_degree(2^{i-1}, dim).
unsigned scheduled_degree(unsigned rounds, std::size_t dim);

/// Least j with 2^j >= D^2, D = max{L1^{(n-1)/(2n-3)} L2^{-(n-2)/(2n-3)}, 1}.
unsigned optimal_rounds(std::uint64_t L1, std::uint64_t L2, unsigned n);

class WallCurve : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CrossingCount {
    std::size_t arcs = 0;     // open parameter intervals cut out by the wall
    std::size_t classes = 0;  // distinct sign vectors met
    std::size_t bound = 0;    // 1 + sum of deg(cut o c)
};

/// Sign classes met by a planar curve; throws WallCurve if some cut vanishes on it.
CrossingCount curve_class_crossings(const Curve& c, const PartitionResult& R);

}  // namespace flowinc

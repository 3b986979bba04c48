#pragma once

#include "flowinc/algebraic.hpp"
#include "flowinc/flows.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowinc {

using Decimal50 = boost::multiprecision::cpp_dec_float_50;

class InfiniteIntersection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlgebraicPoint {
    std::vector<AlgebraicNumber> coords;

    bool is_rational() const;
    /// Coordinates joined by ';'.
    std::string to_string() const;
    friend int compare(const AlgebraicPoint& a, const AlgebraicPoint& b);
    friend bool operator==(const AlgebraicPoint& a, const AlgebraicPoint& b) { return compare(a, b) == 0; }
    friend bool operator<(const AlgebraicPoint& a, const AlgebraicPoint& b) { return compare(a, b) < 0; }
};

struct IncidenceRecord {
    std::string id1, id2;
    AlgebraicPoint point;
    AlgebraicNumber s, t;  // c1(s) = c2(t) = point
    bool tangential = false;
};

/// All real common points of two curves of equal dimension.
/// Throws InfiniteIntersection when they share a component.
std::vector<IncidenceRecord> intersect_curves(const Curve& c1, const Curve& c2);

struct IncidenceSet {
    std::vector<IncidenceRecord> records;  // sorted by (id1, id2, point); id1 < id2
    std::size_t count() const { return records.size(); }
};

/// Every (unordered pair, common point) between L1 and L2; pairs of a curve with itself are skipped.
IncidenceSet incidence_set(const std::vector<Curve>& L1, const std::vector<Curve>& L2, unsigned workers = 1);

/// CSV with header id1,id2,point_repr,tangential.
std::string incidences_csv(const IncidenceSet& set);

/// u -> (u, p(u)) with integer data; counts point/graph incidences by hashing point columns.
class GraphIncidenceCounter {
public:
    /// Points must be planar and rational.
    explicit GraphIncidenceCounter(const std::vector<RationalVector>& points);
    ~GraphIncidenceCounter();
    GraphIncidenceCounter(GraphIncidenceCounter&&) noexcept;
    GraphIncidenceCounter& operator=(GraphIncidenceCounter&&) noexcept;
    /// Incidences of the graph of p with the stored points.
    std::uint64_t count(const UPoly& p) const;
    /// Same for integer coefficients c0 + c1 u + ...
    std::uint64_t count(std::span<const std::int64_t> coeffs) const;

private:
    struct Column;
    std::vector<Column> cols_;
    bool integral_ = true;
};

/// True when c is u -> (u, p(u)).
bool is_planar_graph(const Curve& c);

/// Incidences between one-point curves and planar graph curves.
std::uint64_t count_graph_incidences(const std::vector<Curve>& points, const std::vector<Curve>& graphs);

/// Graph curves meet with a double root of their difference.
bool tangent_pair(const Curve& c1, const Curve& c2);

/// Unordered tangent pairs in parabola_grid(N), by the difference method.
std::uint64_t count_tangent_pairs(std::uint64_t N);

struct Joint {
    AlgebraicPoint point;
    std::uint64_t multiplicity = 0;
    std::vector<std::string> curves;  // ids through the point, sorted
};

/// Points where the generator coords of the curves through them span Q^V_dim.
/// Multiplicity counts the V_dim-element subsets of those curves that already span.
std::vector<Joint> detect_joints(const std::vector<Curve>& L, std::size_t V_dim, unsigned workers = 1);

struct MultijointResult {
    Decimal50 sum;
    std::vector<std::pair<AlgebraicPoint, std::uint64_t>> joints;  // (p, m(p)), sorted by point
};

/// Sum over joints of m(p)^{1/(n-1)}, m(p) = ordered spanning n-tuples with one curve per family.
MultijointResult multijoint_sum(const std::vector<std::vector<Curve>>& families, std::size_t n, unsigned workers = 1);

}  // namespace flowinc

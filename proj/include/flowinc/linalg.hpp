#pragma once

#include "flowinc/rational.hpp"

#include <vector>

namespace flowinc {

/// Dense row-major matrix over the rationals.
using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
    RationalMatrix rows;               // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelon reduced_row_echelon(RationalMatrix m, std::size_t ncols);

std::size_t rank(const RationalMatrix& m, std::size_t ncols);

/// Basis of { x : m x = 0 }, one vector per free column, in free-column order.
RationalMatrix nullspace(const RationalMatrix& m, std::size_t ncols);

/// True if v lies in the row span of `basis`.
bool in_span(const RationalMatrix& basis, const RationalVector& v);

/// Coordinates c with sum c_i basis_i = v; basis rows must be independent. Throws if v not in span.
RationalVector coordinates_in(const RationalMatrix& basis, const RationalVector& v);

/// Incremental independent set: keeps an echelon form for O(n) membership tests.
class SpanTracker {
public:
    explicit SpanTracker(std::size_t dim) : dim_(dim) {}
    /// Adds v if independent of what is held; returns whether it was added.
    bool add(RationalVector v);
    bool contains(RationalVector v) const;
    std::size_t rank() const { return echelon_.size(); }
    std::size_t dim() const { return dim_; }

private:
    void reduce(RationalVector& v) const;
    std::size_t dim_;
    std::vector<RationalVector> echelon_;
    std::vector<std::size_t> pivots_;
};

}  // namespace flowinc

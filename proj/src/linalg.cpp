#include "flowinc/linalg.hpp"

#include <stdexcept>

namespace flowinc {

RowEchelon reduced_row_echelon(RationalMatrix m, std::size_t ncols) {
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (m[row][j] != 0) m[r][j] -= f * m[row][j];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m, std::size_t ncols) {
    return reduced_row_echelon(m, ncols).pivots.size();
}

RationalMatrix nullspace(const RationalMatrix& m, std::size_t ncols) {
    auto e = reduced_row_echelon(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RationalMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_span(const RationalMatrix& basis, const RationalVector& v) {
    if (basis.empty()) {
        for (auto& x : v)
            if (x != 0) return false;
        return true;
    }
    SpanTracker t(v.size());
    for (auto& b : basis) t.add(b);
    return t.contains(v);
}

RationalVector coordinates_in(const RationalMatrix& basis, const RationalVector& v) {
    // Solve basis^T c = v.
    std::size_t k = basis.size(), n = v.size();
    RationalMatrix aug(n, RationalVector(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
        aug[i][k] = v[i];
    }
    auto e = reduced_row_echelon(aug, k + 1);
    RationalVector c(k, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == k) throw std::invalid_argument("coordinates_in: vector not in span");
        c[e.pivots[r]] = e.rows[r][k];
    }
    return c;
}

void SpanTracker::reduce(RationalVector& v) const {
    for (std::size_t r = 0; r < echelon_.size(); ++r) {
        const auto p = pivots_[r];
        if (v[p] == 0) continue;
        Rational f = v[p];
        for (std::size_t j = 0; j < dim_; ++j)
            if (echelon_[r][j] != 0) v[j] -= f * echelon_[r][j];
    }
}

bool SpanTracker::add(RationalVector v) {
    if (v.size() != dim_) throw std::invalid_argument("SpanTracker: dimension mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    // keep rows fully reduced against the new pivot
    for (auto& row : echelon_) {
        if (row[p] == 0) continue;
        Rational f = row[p];
        for (std::size_t j = 0; j < dim_; ++j)
            if (v[j] != 0) row[j] -= f * v[j];
    }
    echelon_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool SpanTracker::contains(RationalVector v) const {
    if (v.size() != dim_) throw std::invalid_argument("SpanTracker: dimension mismatch");
    reduce(v);
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace flowinc

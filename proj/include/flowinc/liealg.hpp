#pragma once

#include "flowinc/linalg.hpp"
#include "flowinc/vector_field.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flowinc {

/// Finite-dimensional Lie algebra given by structure constants [e_i, e_j] = sum_k c(i,j,k) e_k (0-based).
class NilpotentAlgebra {
public:
    NilpotentAlgebra() = default;
    NilpotentAlgebra(std::size_t dim, unsigned step);

    static NilpotentAlgebra heisenberg();
    static NilpotentAlgebra abelian(std::size_t dim);
    /// Free nilpotent algebra on `generators` letters truncated after brackets of length `step`.
    static NilpotentAlgebra free_nilpotent(std::size_t generators, unsigned step);

    std::size_t dim() const { return dim_; }
    unsigned step() const { return step_; }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    Rational& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }

    /// Bracket of coordinate vectors over any ring with +, * and scaling by Rational.
    template <class S>
    std::vector<S> bracket(const std::vector<S>& u, const std::vector<S>& v, const S& zero) const {
        std::vector<S> out(dim_, zero);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (u[i] == zero) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (i == j || v[j] == zero) continue;
                S uv = u[i] * v[j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (c(i, j, k) != 0) out[k] += uv * c(i, j, k);
            }
        }
        return out;
    }
    RationalVector bracket(const RationalVector& u, const RationalVector& v) const {
        return bracket<Rational>(u, v, Rational(0));
    }

    /// Same algebra written in the basis `basis` (rows, algebra coordinates).
    NilpotentAlgebra in_basis(const RationalMatrix& basis) const;

    /// Text form: a "dim step" line then "i j k p/q" lines, 1-based; '#' starts a comment.
    /// A listed (i, j) entry implies the (j, i) entry with opposite sign unless that one is listed too.
    static NilpotentAlgebra parse(std::string_view text);
    static NilpotentAlgebra load(const std::string& path);
    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    unsigned step_ = 1;
    std::vector<Rational> c_;
};

struct AlgebraReport {
    std::optional<std::array<std::size_t, 3>> antisymmetry_violation;  // (i, j, k), 0-based
    std::optional<std::array<std::size_t, 3>> jacobi_violation;        // (i, j, k), 0-based
    std::optional<unsigned> step;  // nilpotency step; empty if not nilpotent
    unsigned declared_step = 0;

    bool valid() const {
        return !antisymmetry_violation && !jacobi_violation && step && *step <= declared_step;
    }
    std::string to_string() const;
};

AlgebraReport check_algebra(const NilpotentAlgebra& A);

/// Longest bracket length supported by the precomputed series.
inline constexpr unsigned kBchStepCap = 6;

/// Dynkin form of log(e^X e^Y): (word over {0 = X, 1 = Y}, coefficient); the word
/// w1...wm stands for [w1, [w2, ... [w_{m-1}, w_m]...]].
const std::vector<std::pair<std::vector<int>, Rational>>& bch_table();

/// log(exp(u) exp(v)) in first-kind coordinates; throws std::invalid_argument above kBchStepCap.
template <class S>
std::vector<S> bch_product(const NilpotentAlgebra& A, const std::vector<S>& u, const std::vector<S>& v, const S& zero);
RationalVector bch_product(const NilpotentAlgebra& A, const RationalVector& u, const RationalVector& v);

struct MalcevBasis {
    RationalMatrix vectors;  // ordered basis, algebra coordinates
    std::size_t split = 0;   // vectors[0..split) span a complement of z
};

/// Ordered basis whose every tail spans a subalgebra and whose last dim(z) vectors span z.
/// Throws std::invalid_argument if z is not a subalgebra.
MalcevBasis weak_malcev_basis(const NilpotentAlgebra& A, const RationalMatrix& z);

bool tails_closed(const NilpotentAlgebra& A, const RationalMatrix& basis);

/// Fields on the quotient coordinates (t_1..t_split) generating s -> exp(s Y_j) g for each basis vector Y_j,
/// with g = exp(t_1 Y_1) ... exp(t_N Y_N).
std::vector<VectorField> pushforward_fields(const NilpotentAlgebra& A, const MalcevBasis& B);

/// sigma with [f_i, f_j] = sigma * sum_k c'(i,j,k) f_k for all i, j, c' the constants in basis B.
/// -1 is reported when both signs fit; empty when neither does.
std::optional<int> bracket_sign(const NilpotentAlgebra& A, const MalcevBasis& B, const std::vector<VectorField>& fields);

}  // namespace flowinc

#include "doctest.h"
#include "helpers.hpp"

#include "flowinc/flows.hpp"
#include "flowinc/liealg.hpp"

using namespace flowinc;
using testing::q;

namespace {

RationalVector e(std::size_t n, std::size_t k) {
    RationalVector v(n, q(0));
    v[k] = 1;
    return v;
}

// [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
RationalVector jacobi(const NilpotentAlgebra& A, std::size_t i, std::size_t j, std::size_t k) {
    auto n = A.dim();
    auto a = A.bracket(e(n, i), A.bracket(e(n, j), e(n, k)));
    auto b = A.bracket(e(n, j), A.bracket(e(n, k), e(n, i)));
    auto c = A.bracket(e(n, k), A.bracket(e(n, i), e(n, j)));
    for (std::size_t m = 0; m < n; ++m) a[m] += b[m] + c[m];
    return a;
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("standard algebras are valid") {
    auto h = NilpotentAlgebra::heisenberg();
    CHECK(h.c(0, 1, 2) == 1);
    CHECK(h.c(1, 0, 2) == -1);
    auto rh = check_algebra(h);
    CHECK(rh.valid());
    CHECK(*rh.step == 2);
    auto ra = check_algebra(NilpotentAlgebra::abelian(3));
    CHECK(ra.valid());
    CHECK(*ra.step == 1);
    CHECK(NilpotentAlgebra::free_nilpotent(2, 2).dim() == 3);
    CHECK(NilpotentAlgebra::free_nilpotent(2, 3).dim() == 5);
    CHECK(NilpotentAlgebra::free_nilpotent(2, 4).dim() == 8);
    CHECK(NilpotentAlgebra::free_nilpotent(3, 2).dim() == 6);
    for (auto [r, s] : {std::pair{2u, 3u}, std::pair{2u, 4u}, std::pair{3u, 2u}}) {
        auto rep = check_algebra(NilpotentAlgebra::free_nilpotent(r, s));
        CHECK(rep.valid());
        CHECK(*rep.step == s);
    }
}

TEST_CASE("violations are reported") {
    auto bad = NilpotentAlgebra::heisenberg();
    bad.c(1, 0, 2) = 0;
    auto r = check_algebra(bad);
    CHECK_FALSE(r.valid());
    REQUIRE(r.antisymmetry_violation);
    CHECK_FALSE(r.to_string().empty());

    // [e2,[e3,e1]] = [e2,e4] = e1 while the other two terms vanish
    auto f = NilpotentAlgebra::parse("4 3\n1 2 3 1\n3 1 4 1\n2 4 1 1\n");
    auto rj = check_algebra(f);
    CHECK_FALSE(rj.antisymmetry_violation);
    REQUIRE(rj.jacobi_violation);
    auto [i, j, k] = *rj.jacobi_violation;
    CHECK(jacobi(f, i, j, k) != RationalVector(f.dim(), q(0)));
}

TEST_CASE("text format") {
    auto h = NilpotentAlgebra::parse("# Heisenberg\n3 2\n1 2 3 1\n");
    CHECK(h.c(0, 1, 2) == 1);
    CHECK(h.c(1, 0, 2) == -1);
    CHECK(check_algebra(h).valid());
    auto back = NilpotentAlgebra::parse(NilpotentAlgebra::free_nilpotent(2, 3).to_string());
    auto f = NilpotentAlgebra::free_nilpotent(2, 3);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b)
            for (std::size_t c = 0; c < 5; ++c) CHECK(back.c(a, b, c) == f.c(a, b, c));
    CHECK_THROWS_AS(NilpotentAlgebra::parse("3 2\n1 2 3 1\n1 2 3 2\n"), ParseError);
    CHECK_THROWS_AS(NilpotentAlgebra::parse("3 2\n1 4 3 1\n"), ParseError);
    CHECK_THROWS_AS(NilpotentAlgebra::parse("3 2\n1 2 3 x\n"), ParseError);
    CHECK_THROWS_AS(NilpotentAlgebra::parse(""), ParseError);
}

TEST_CASE("BCH product") {
    auto h = NilpotentAlgebra::heisenberg();
    CHECK(bch_product(h, e(3, 0), e(3, 1)) == RationalVector{q(1), q(1), q(1, 2)});
    CHECK(bch_product(h, e(3, 1), e(3, 0)) == RationalVector{q(1), q(1), q(-1, 2)});
    auto a = NilpotentAlgebra::abelian(2);
    CHECK(bch_product(a, {q(1), q(2)}, {q(3), q(-1)}) == RationalVector{q(4), q(1)});
    CHECK_THROWS_AS(bch_product(NilpotentAlgebra::free_nilpotent(2, 7), RationalVector(), RationalVector()),
                    std::invalid_argument);
    CHECK(bch_table().size() == 40);
    CHECK(bch_table()[0].second == 1);
}

TEST_CASE("weak Malcev basis") {
    auto h = NilpotentAlgebra::heisenberg();
    auto B0 = weak_malcev_basis(h, {});
    CHECK(B0.split == 3);
    CHECK(tails_closed(h, B0.vectors));
    auto B = weak_malcev_basis(h, {e(3, 2)});
    CHECK(B.split == 2);
    CHECK(B.vectors == RationalMatrix{e(3, 0), e(3, 1), e(3, 2)});
    CHECK_THROWS_AS(weak_malcev_basis(h, {e(3, 0), e(3, 1)}), std::invalid_argument);
    auto ab = weak_malcev_basis(NilpotentAlgebra::abelian(3), {});
    CHECK(tails_closed(NilpotentAlgebra::abelian(3), ab.vectors));
    CHECK_FALSE(tails_closed(h, {e(3, 2), e(3, 0), e(3, 1)}));
    auto f = NilpotentAlgebra::free_nilpotent(2, 3);
    auto Bf = weak_malcev_basis(f, {e(5, 4)});
    CHECK(Bf.split == 4);
    CHECK(tails_closed(f, Bf.vectors));
    CHECK(in_span({Bf.vectors.back()}, e(5, 4)));
}

TEST_CASE("pushforward fields") {
    auto h = NilpotentAlgebra::heisenberg();
    auto B = weak_malcev_basis(h, {});
    auto F = pushforward_fields(h, B);
    REQUIRE(F.size() == 3);
    CHECK(F[0] == VectorField::coordinate(3, 0));
    CHECK(F[1] == VectorField::parse("[0; 1; -x1]", 3));
    CHECK(F[2] == VectorField::coordinate(3, 2));
    CHECK(bracket_sign(h, B, F) == -1);

    auto a = NilpotentAlgebra::abelian(3);
    auto Fa = pushforward_fields(a, weak_malcev_basis(a, {}));
    for (std::size_t i = 0; i < 3; ++i) CHECK(Fa[i] == VectorField::coordinate(3, i));

    // quotient by the centre: fields live on the first split coordinates
    auto Bz = weak_malcev_basis(h, {e(3, 2)});
    auto Fz = pushforward_fields(h, Bz);
    REQUIRE(Fz.size() == 3);
    CHECK(Fz[0].nvars() == 2);
    CHECK(Fz[0] == VectorField::coordinate(2, 0));
    CHECK(Fz[2].is_zero());
}

TEST_CASE("pushforward flows are polynomial") {
    for (auto [r, s] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}}) {
        auto A = NilpotentAlgebra::free_nilpotent(r, s);
        auto B = weak_malcev_basis(A, {});
        auto F = pushforward_fields(A, B);
        CHECK(F[0] == VectorField::coordinate(A.dim(), 0));
        CHECK(bracket_sign(A, B, F).has_value());
        for (auto& X : F) {
            auto flow = flow_map(X);
            for (auto& p : flow) CHECK(p.total_degree() <= static_cast<int>(s) + 1);
        }
    }
}

}  // TEST_SUITE

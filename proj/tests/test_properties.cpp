#include "doctest.h"
#include "helpers.hpp"

#include "flowinc/families.hpp"
#include "flowinc/incidence.hpp"
#include "flowinc/liealg.hpp"
#include "flowinc/partition.hpp"

#include <algorithm>
#include <random>

using namespace flowinc;
using testing::q;
using testing::random_field;
using testing::random_poly;

namespace {

RationalVector random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    RationalVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(q(num(rng), den(rng)));
    return v;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("poly ring laws and text round trip") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 1 + it % 4;
        Poly a = random_poly(rng, n, 3), b = random_poly(rng, n, 3), c = random_poly(rng, n, 3);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(Poly::parse(a.to_string(), n) == a);
        auto pt = random_vec(rng, n);
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    }
}

TEST_CASE("bracket antisymmetry, Jacobi and Leibniz") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 1 + it % 4;
        unsigned deg = 1 + it % 3;
        VectorField X = random_field(rng, n, deg), Y = random_field(rng, n, deg), Z = random_field(rng, n, deg);
        CHECK(lie_bracket(X, Y) == -lie_bracket(Y, X));
        VectorField jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                          lie_bracket(Z, lie_bracket(X, Y));
        CHECK(jac.is_zero());
        Poly f = random_poly(rng, n, deg), g = random_poly(rng, n, deg);
        CHECK(apply_field(X, f * g) == apply_field(X, f) * g + f * apply_field(X, g));
        // [X,Y] f = X(Y f) - Y(X f)
        CHECK(apply_field(lie_bracket(X, Y), f) == apply_field(X, apply_field(Y, f)) - apply_field(Y, apply_field(X, f)));
    }
}

TEST_CASE("BCH group laws") {
    std::mt19937_64 rng(3);
    for (auto [r, s] : {std::pair{2u, 2u}, std::pair{2u, 3u}}) {
        auto A = NilpotentAlgebra::free_nilpotent(r, s);
        const std::size_t n = A.dim();
        RationalVector zero(n, q(0));
        for (int it = 0; it < 100; ++it) {
            auto u = random_vec(rng, n), v = random_vec(rng, n), w = random_vec(rng, n);
            CHECK(bch_product(A, bch_product(A, u, v), w) == bch_product(A, u, bch_product(A, v, w)));
            RationalVector neg = u;
            for (auto& x : neg) x = -x;
            CHECK(bch_product(A, u, neg) == zero);
            CHECK(bch_product(A, u, zero) == u);
            CHECK(bch_product(A, zero, u) == u);
        }
    }
}

TEST_CASE("pushforward brackets follow the structure constants") {
    for (auto [r, s] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 4u}}) {
        auto A = NilpotentAlgebra::free_nilpotent(r, s);
        auto B = weak_malcev_basis(A, {});
        auto F = pushforward_fields(A, B);
        auto sigma = bracket_sign(A, B, F);
        REQUIRE(sigma);
        auto C = A.in_basis(B.vectors);
        for (std::size_t i = 0; i < F.size(); ++i)
            for (std::size_t j = 0; j < F.size(); ++j) {
                VectorField rhs = VectorField::zero(F[0].nvars());
                for (std::size_t k = 0; k < F.size(); ++k)
                    if (C.c(i, j, k) != 0) rhs += (C.c(i, j, k) * *sigma) * F[k];
                CHECK(lie_bracket(F[i], F[j]) == rhs);
            }
    }
}

TEST_CASE("incidence counts ignore input order") {
    std::mt19937_64 rng(4);
    auto P = generate(parse_family_spec("kind=parabola_grid\nN=2\ncount=40\nseed=7"));
    auto Q = generate(parse_family_spec("kind=parabola_grid\nN=2\ncount=40\nseed=8"));
    auto base = incidence_set(P, Q);
    for (int it = 0; it < 3; ++it) {
        std::shuffle(P.begin(), P.end(), rng);
        std::shuffle(Q.begin(), Q.end(), rng);
        auto again = incidence_set(Q, P, 2);
        REQUIRE(again.count() == base.count());
        for (std::size_t i = 0; i < base.count(); ++i) {
            CHECK(again.records[i].id1 == base.records[i].id1);
            CHECK(again.records[i].id2 == base.records[i].id2);
            CHECK(again.records[i].point == base.records[i].point);
        }
    }
}

TEST_CASE("joint detection is invariant under rescaling generators") {
    std::mt19937_64 rng(5);
    auto L = generate(parse_family_spec("kind=axis_parallel\nn=3\nk=3"));
    auto base = detect_joints(L, 3);
    CHECK(base.size() == 27);
    std::uniform_int_distribution<long> scale(1, 5);
    for (auto& c : L)
        for (auto& x : *c.generator_coords) x *= q(scale(rng) * (rng() % 2 ? 1 : -1), scale(rng));
    auto scaled = detect_joints(L, 3);
    REQUIRE(scaled.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(scaled[i].point == base[i].point);
        CHECK(scaled[i].multiplicity == base[i].multiplicity);
    }
}

TEST_CASE("weighted partitions halve and account for every point") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> coord(0, 200);
    std::uniform_int_distribution<std::uint64_t> wt(1, 8);
    for (int trial = 0; trial < 4; ++trial) {
        WeightedPoints P{2, {}, {}};
        for (int i = 0; i < 48; ++i) {
            P.points.push_back({q(coord(rng)), q(coord(rng))});
            P.weights.push_back(wt(rng));
        }
        const unsigned rounds = 3;
        auto R = partition_points(P, rounds);
        std::uint64_t total = R.wall_weight;
        std::vector<int> seen(P.size(), 0);
        for (auto& [key, c] : R.classes) {
            CHECK(c.weight * (1u << rounds) <= P.total_weight());
            std::uint64_t w = 0;
            for (auto i : c.indices) w += P.weight(i), ++seen[i];
            CHECK(w == c.weight);
            total += c.weight;
        }
        std::uint64_t wall = 0;
        for (auto i : R.wall) {
            wall += P.weight(i);
            ++seen[i];
            bool on_cut = false;
            for (auto& cut : R.cuts) on_cut = on_cut || cut.evaluate(P.points[i]) == 0;
            CHECK(on_cut);
        }
        CHECK(wall == R.wall_weight);
        CHECK(total == P.total_weight());
        for (int s : seen) CHECK(s == 1);
    }
}

}  // TEST_SUITE

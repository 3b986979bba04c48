#include "doctest.h"
#include "helpers.hpp"

#include "flowinc/partition.hpp"

#include <random>
#include <set>

using namespace flowinc;
using testing::q;
using testing::var;

namespace {

WeightedPoints planar(std::initializer_list<std::pair<long, long>> pts) {
    WeightedPoints P{2, {}, {}};
    for (auto [x, y] : pts) P.points.push_back({q(x), q(y)});
    return P;
}

WeightedPoints random_planar(std::mt19937_64& rng, std::size_t n, long box, std::uint64_t max_weight = 1) {
    std::uniform_int_distribution<long> coord(0, box);
    std::uniform_int_distribution<std::uint64_t> w(1, max_weight);
    WeightedPoints P{2, {}, {}};
    std::set<std::pair<long, long>> seen;
    while (P.size() < n) {
        long x = coord(rng), y = coord(rng);
        if (!seen.insert({x, y}).second) continue;
        P.points.push_back({q(x), q(y)});
        if (max_weight > 1) P.weights.push_back(w(rng));
    }
    return P;
}

// Weight strictly on each side of f.
std::pair<std::uint64_t, std::uint64_t> sides(const Poly& f, const WeightedPoints& P) {
    std::uint64_t pos = 0, neg = 0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        int s = sign(f.evaluate(P.points[i]));
        if (s > 0) pos += P.weight(i);
        if (s < 0) neg += P.weight(i);
    }
    return {pos, neg};
}

Curve planar_curve(UPoly x, UPoly y) {
    Curve c;
    c.id = "c";
    c.ambient_dim = 2;
    c.param = {std::move(x), std::move(y)};
    c.base_point = {c.param[0].evaluate(0), c.param[1].evaluate(0)};
    return c;
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("weighted point validation") {
    WeightedPoints P = planar({{0, 0}, {1, 1}});
    CHECK_NOTHROW(P.validate());
    P.weights = {1};
    CHECK_THROWS_AS(P.validate(), std::invalid_argument);
    P.weights = {1, 0};
    CHECK_THROWS_AS(P.validate(), std::invalid_argument);
    P.weights = {2, 3};
    CHECK(P.total_weight() == 5);
}

TEST_CASE("monomials and degree schedule") {
    CHECK(monomials_up_to(2, 2).size() == 6);
    CHECK(monomials_up_to(3, 1).size() == 4);
    CHECK(cut_degree(1, 2) == 1);
    CHECK(cut_degree(2, 2) == 1);
    CHECK(cut_degree(4, 2) == 2);
    CHECK(cut_degree(8, 2) == 3);
    CHECK(cut_degree(16, 2) == 5);
    CHECK(scheduled_degree(5, 2) == 12);
    CHECK(optimal_rounds(0, 5, 3) == 0);
    CHECK(optimal_rounds(1000, 1000, 3) >= 1);
}

TEST_CASE("vanishing_poly examples") {
    auto square = planar({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK_FALSE(vanishing_poly(square, 1));
    auto f = vanishing_poly(square, 3);
    REQUIRE(f);
    CHECK(f->total_degree() == 2);
    for (auto& p : square.points) CHECK(f->evaluate(p) == 0);
    auto one = planar({{3, -2}});
    auto g = vanishing_poly(one, 1);
    REQUIRE(g);
    CHECK(g->total_degree() == 1);
    CHECK(g->evaluate(one.points[0]) == 0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        auto P = random_planar(rng, 20, 50);
        // binom(5 + 2, 2) = 21 > 20 guarantees a solution
        auto h = vanishing_poly(P, 5);
        REQUIRE(h);
        for (auto& p : P.points) CHECK(h->evaluate(p) == 0);
        CHECK_FALSE(vanishing_poly(P, static_cast<unsigned>(h->total_degree() - 1)));
    }
}

TEST_CASE("ham_sandwich_cut examples") {
    auto a = planar({{0, 0}, {2, 0}}), b = planar({{0, 2}, {2, 2}});
    Poly cut = ham_sandwich_cut({a, b});
    CHECK(cut.total_degree() == 1);
    for (auto* P : {&a, &b}) {
        auto [pos, neg] = sides(cut, *P);
        CHECK(pos == 1);
        CHECK(neg == 1);
    }
    Poly x1 = var(2, 0) - Poly::constant(2, q(1));
    CHECK((cut == x1 || cut == -x1));

    auto lone = planar({{5, 7}});
    Poly through = ham_sandwich_cut({lone});
    CHECK(through.evaluate(lone.points[0]) == 0);

    auto s1 = planar({{1, 1}}), s2 = planar({{4, -3}});
    Poly both = ham_sandwich_cut({s1, s2});
    CHECK(both.evaluate(s1.points[0]) == 0);
    CHECK(both.evaluate(s2.points[0]) == 0);

    std::vector<WeightedPoints> many(65, lone);
    CHECK_THROWS_AS(ham_sandwich_cut(many), SearchExhausted);
}

TEST_CASE("partition_points examples") {
    auto four = planar({{0, 0}, {3, 1}, {1, 4}, {5, 5}});
    auto R = partition_points(four, 2);
    CHECK(R.cuts.size() == 2);
    CHECK(R.max_class_weight() <= 1);

    auto same = planar({{2, 2}, {2, 2}, {2, 2}});
    auto S = partition_points(same, 1);
    CHECK(S.classes.empty());
    CHECK(S.wall.size() == 3);
    CHECK(S.wall_weight == 3);
}

TEST_CASE("partition of 128 random points") {
    std::mt19937_64 rng(2024);
    auto P = random_planar(rng, 128, 1000);
    auto R = partition_points(P, 5);
    CHECK(R.classes.size() <= 32);
    CHECK(R.max_class_weight() <= 4);
    CHECK(R.degree() <= 12);
    std::vector<int> seen(P.size(), 0);
    for (auto& [key, c] : R.classes) {
        CHECK(key.size() == 5);
        for (auto i : c.indices) ++seen[i];
    }
    for (auto i : R.wall) ++seen[i];
    for (int s : seen) CHECK(s == 1);
    auto js = R.to_json();
    CHECK(js["cuts"].size() == 5);
}

TEST_CASE("curve class crossings") {
    PartitionResult R;
    R.cuts = {var(2, 0) * var(2, 0) - Poly::constant(2, q(1))};
    auto line = curve_class_crossings(planar_curve(UPoly::x(), UPoly()), R);
    CHECK(line.arcs == 3);
    CHECK(line.classes == 2);
    CHECK(line.bound == 3);

    PartitionResult S;
    S.cuts = {var(2, 1) - Poly::constant(2, q(1))};
    auto para = curve_class_crossings(planar_curve(UPoly::x(), UPoly({q(0), q(0), q(1)})), S);
    CHECK(para.arcs == 3);
    CHECK(para.classes == 2);
    CHECK(para.bound == 3);

    // the line v = 2u crosses x = 0 and y = 1 once each
    PartitionResult T;
    T.cuts = {var(2, 0), var(2, 1) - Poly::constant(2, q(1))};
    auto diag = curve_class_crossings(planar_curve(UPoly::x(), UPoly({q(0), q(2)})), T);
    CHECK(diag.arcs == 3);
    CHECK(diag.classes == 3);

    CHECK_THROWS_AS(curve_class_crossings(planar_curve(UPoly::x(), UPoly::constant(q(1))), S), WallCurve);
}

}  // TEST_SUITE

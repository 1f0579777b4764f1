#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sepcycle/approx.hpp"
#include "sepcycle/instances.hpp"

using namespace sepcycle;

TEST_CASE("guess rectangle frame") {
    const GuessRectangle rect({0, 0}, {1, 0});
    CHECK(rect.contains({0.5, 0.0}));
    CHECK(rect.contains({0.5, std::sqrt(3.0) / 2.0}));        // lens apex on the boundary
    CHECK_FALSE(rect.contains({0.5, std::sqrt(3.0) / 2.0 + 1e-6}));
    CHECK(rect.contains({0.0, -std::sqrt(3.0) / 2.0}));
    CHECK_FALSE(rect.contains({-0.51, 0.0}));
    const Point2 f = rect.to_frame({0, 0});
    CHECK(f.x == doctest::Approx(0.0));
    CHECK(f.y == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("few path basics") {
    const FewPath single = few_path_2d({{0.3, 0.4}}, 1.0, 1.0);
    CHECK(single.length == 0.0);
    CHECK(single.order == std::vector<int>{0});

    // 4 unit-square corners: bound sqrt(8)+7/4, an explicit length-3 path exists
    const FewPath corners = few_path_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 1.0, 1.0);
    CHECK(corners.length <= std::sqrt(8.0) + 1.75);
    CHECK(corners.length == doctest::Approx(3.0));  // boustrophedon hits the optimum here
    std::vector<int> seen = corners.order;
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("few path bound over random instances") {
    std::mt19937_64 rng(31);
    for (int n : {10, 100, 1000}) {
        for (int round = 0; round < 40; ++round) {
            std::vector<Point2> pts(n);
            for (auto& p : pts) p = {uniform01(rng()), uniform01(rng())};
            const FewPath fp = few_path_2d(pts, 1.0, 1.0);
            CHECK(fp.length <= std::sqrt(2.0 * n) + 1.75);
            CHECK(fp.length <= fp.bound);
            std::vector<int> seen = fp.order;
            std::sort(seen.begin(), seen.end());
            for (int i = 0; i < n; ++i) CHECK(seen[i] == i);
        }
    }
}

TEST_CASE("few path bound in stretched rectangles") {
    std::mt19937_64 rng(77);
    const double W = 2.0, H = 2.0 * std::sqrt(3.0);
    for (int round = 0; round < 40; ++round) {
        const int n = 5 + static_cast<int>(rng() % 60);
        std::vector<Point2> pts(n);
        for (auto& p : pts) p = {W * uniform01(rng()), H * uniform01(rng())};
        const FewPath fp = few_path_2d(pts, W, H);
        CHECK(fp.length <= fp.bound);
        CHECK(fp.bound <= std::sqrt(2.0 * n * W * H) + 2.0 * (W + H));
    }
}

TEST_CASE("min diameter selection") {
    SUBCASE("single pair has bound zero") {
        const GeomInstance inst = gen_random_matching(1, 4);
        const DiamSelection sel = min_diam_selection(inst);
        CHECK(sel.lower_bound == 0.0);
    }
    SUBCASE("two collinear pairs") {
        GeomInstance inst;
        inst.dim = 2;
        inst.points = {{0, 0, 0}, {10, 0, 0}, {1, 0, 0}, {11, 0, 0}};
        inst.edges = {{0, 1}, {2, 3}};
        const DiamSelection sel = min_diam_selection(inst);
        CHECK(sel.diameter == doctest::Approx(1.0));
        CHECK(sel.lower_bound == doctest::Approx(2.0));
        CHECK(sel.selection == std::vector<int>{0, 2});
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(min_diam_selection(gen_random_matching(15, 1)), TooLarge);
    }
    SUBCASE("grid k=3 picks one full side") {
        const DiamSelection sel = min_diam_selection(gen_grid_hard(3));
        CHECK(sel.diameter == doctest::Approx(std::numbers::sqrt2));
    }
}

TEST_CASE("sqrt_approx solves a single pair with a tiny square") {
    GeomInstance inst;
    inst.dim = 2;
    inst.points = {{0, 0, 0}, {1, 0, 0}};
    inst.edges = {{0, 1}};
    const SqrtApproxResult res = sqrt_approx(inst);
    CHECK(res.cycle.length() <= 8.0 * res.cycle.offset + 1e-12);
    CHECK(validate_separation(res.cycle, inst).pass());
}

TEST_CASE("sqrt_approx rejects odd cycles and hypergraphs") {
    CHECK_THROWS_AS(sqrt_approx(gen_odd_cycle(5)), Infeasible);
    GeomInstance hyper;
    hyper.dim = 2;
    hyper.points = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    hyper.edges = {{0, 1, 2}};
    CHECK_THROWS_AS(sqrt_approx(hyper), NotAGraph);
}

TEST_CASE("sqrt_approx output is valid and within the factor bound on matchings") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 2 + static_cast<int>(seed % 9);
        const GeomInstance inst = gen_random_matching(n, seed * 7 + 1);
        const SqrtApproxResult res = sqrt_approx(inst);
        CHECK(validate_separation(res.cycle, inst).pass());
        const DiamSelection sel = min_diam_selection(inst);
        const double denom = std::max(sel.lower_bound, 16.0 * res.cycle.offset);
        CHECK(res.cycle.length() / denom <= 10.0 * std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("sqrt_approx never abandons the oracle's diameter pair") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 6);
        const GeomInstance inst = gen_random_matching(n, seed * 11 + 3);
        const DiamSelection sel = min_diam_selection(inst);
        // vertex indices realizing the selection's diameter
        double best = -1.0;
        int va = -1, vb = -1;
        for (std::size_t i = 0; i < sel.selection.size(); ++i) {
            for (std::size_t j = i + 1; j < sel.selection.size(); ++j) {
                const double d =
                    dist(inst.pt2(sel.selection[i]), inst.pt2(sel.selection[j]));
                if (d > best) {
                    best = d;
                    va = sel.selection[i];
                    vb = sel.selection[j];
                }
            }
        }
        if (va > vb) std::swap(va, vb);
        const SqrtApproxResult res = sqrt_approx(inst);
        bool found = false;
        for (const auto& outcome : res.trace) {
            if (outcome.a == va && outcome.b == vb) {
                found = true;
                CHECK_FALSE(outcome.abandoned);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("sqrt_approx handles the escape-square instance") {
    const GeomInstance inst = gen_escape_square();
    CHECK(bipartition(inst.hypergraph()).feasible());
    const SqrtApproxResult res = sqrt_approx(inst);
    CHECK(validate_separation(res.cycle, inst).pass());
}

TEST_CASE("sqrt_approx on the hard grid stays valid") {
    for (int k : {2, 3}) {
        const GeomInstance inst = gen_grid_hard(k);
        const SqrtApproxResult res = sqrt_approx(inst);
        CHECK(validate_separation(res.cycle, inst).pass());
    }
}

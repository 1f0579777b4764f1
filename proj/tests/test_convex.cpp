#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sepcycle/convex.hpp"
#include "sepcycle/instances.hpp"

using namespace sepcycle;

namespace {

ConvexPolygon regular_ngon(int m, double radius = 1.0) {
    std::vector<Point2> ring(m);
    for (int i = 0; i < m; ++i) {
        const double t = 2.0 * std::numbers::pi * i / m;
        ring[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return ConvexPolygon::from_ccw_ring(std::move(ring));
}

ConvexPolygon random_hull(int m, std::uint64_t seed) {
    return ConvexPolygon::from_ccw_ring(gen_convex_ring(m, seed));
}

ConvexInstance circle_pairs(const std::vector<std::pair<double, double>>& angle_pairs) {
    std::vector<std::pair<Point2, Point2>> pairs;
    for (const auto& [a, b] : angle_pairs) {
        const double ra = a * std::numbers::pi / 180.0;
        const double rb = b * std::numbers::pi / 180.0;
        pairs.push_back({{std::cos(ra), std::sin(ra)}, {std::cos(rb), std::sin(rb)}});
    }
    return ConvexInstance::create(std::move(pairs));
}

// Independent re-implementation of the selection enumeration (perimeter only).
double oracle_reference(const ConvexInstance& inst) {
    const int n = inst.n();
    const auto pts = inst.all_points();
    const ConvexPolygon hull = convex_hull(pts);
    auto pos_of = [&](const Point2& p) {
        for (std::size_t i = 0; i < hull.vertices().size(); ++i)
            if (hull.vertices()[i] == p) return static_cast<int>(i);
        return -1;
    };
    double best = 1e300;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<std::pair<int, Point2>> sel;
        for (int i = 0; i < n; ++i) {
            const Point2 p = ((mask >> i) & 1ull) ? inst.pairs[i].second : inst.pairs[i].first;
            sel.push_back({pos_of(p), p});
        }
        std::sort(sel.begin(), sel.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        double per = 0.0;
        for (int i = 0; i < n; ++i) per += dist(sel[i].second, sel[(i + 1) % n].second);
        if (n == 1) per = 0.0;
        best = std::min(best, per);
    }
    return best;
}

}  // namespace

TEST_CASE("approx_subpolygon on a triangle returns the triangle") {
    const ConvexPolygon tri = ConvexPolygon::from_ccw_ring({{0, 0}, {2, 0}, {1, 1.5}});
    const auto [Q, trace] = approx_subpolygon(tri, 0.3);
    CHECK(Q.size() == 3);
    CHECK(verify_approx(tri, Q, 0.3));
}

TEST_CASE("approx_subpolygon bound and containment on regular polygons") {
    const ConvexPolygon P = regular_ngon(100);
    const auto [Q, trace] = approx_subpolygon(P, 0.04);
    CHECK(static_cast<int>(Q.size()) <= trace.q_bound);
    CHECK(trace.q_bound == static_cast<int>(std::ceil(10.0 * std::numbers::pi / 0.2 + 14.0)));
    CHECK(verify_approx(P, Q, 0.04));
    CHECK(trace.alpha_sum() <= 2.0 * std::numbers::pi + 1e-9);
}

TEST_CASE("approx_subpolygon over random hulls") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int m = 20 + static_cast<int>(seed) * 16;
        const ConvexPolygon P = random_hull(m, seed);
        for (double eps : {0.01, 0.09}) {
            const auto [Q, trace] = approx_subpolygon(P, eps);
            CHECK(verify_approx(P, Q, eps));
            CHECK(static_cast<int>(Q.size()) <= trace.q_bound);
            // every vertex is within eps*diam of the subpolygon's inflation
            const double r = eps * P.diameter();
            for (const Point2& v : P.vertices()) CHECK(inflated_contains(Q, r, v));
            // trace sum bound
            CHECK(trace.alpha_sum() <= 2.0 * std::numbers::pi + 1e-9);
            // short constrained chords satisfy the angle dichotomy
            for (const auto& side : trace.sides) {
                if (side.nontrivial && side.constrained && side.is_short)
                    CHECK((side.alpha >= std::sqrt(eps) / 2.0 - 1e-12 ||
                           side.alpha >= std::numbers::pi / 3.0 - 1e-12));
            }
            // diameter of Q close to the diameter of P
            CHECK(Q.diameter() >= P.diameter() / (1.0 + 2.0 * eps) - 1e-12);
        }
    }
}

TEST_CASE("verify_approx sagitta threshold on the 64-gon") {
    const ConvexPolygon P = regular_ngon(64);
    std::vector<Point2> every_other;
    for (std::size_t i = 0; i < P.size(); i += 2) every_other.push_back(P.vertices()[i]);
    const ConvexPolygon Q = ConvexPolygon::from_ccw_ring(std::move(every_other));
    const double sagitta = 1.0 - std::cos(2.0 * std::numbers::pi / 64.0);
    const double eps_exact = sagitta / P.diameter();  // diam = 2
    CHECK(verify_approx(P, Q, eps_exact * 1.01));
    CHECK_FALSE(verify_approx(P, Q, eps_exact * 0.99));
    CHECK(verify_approx(P, P, 0.001));
}

TEST_CASE("min_subpolygon_size regimes") {
    CHECK(min_subpolygon_size(regular_ngon(12), 0.25) <= 4);
    CHECK(min_subpolygon_size(regular_ngon(24), 1.0) == 3);
    CHECK(min_subpolygon_size(regular_ngon(24), 2.0) == 3);
    CHECK_THROWS_AS(min_subpolygon_size(regular_ngon(12), 0.1, 7), TooLarge);

    // growth signature: quartering eps roughly doubles the size
    const ConvexPolygon big = regular_ngon(240);
    const int coarse = min_subpolygon_size(big, 0.008);
    const int fine = min_subpolygon_size(big, 0.002);
    const double factor = static_cast<double>(fine) / coarse;
    CHECK(factor >= 1.5);
    CHECK(factor <= 2.7);
}

TEST_CASE("inflated perimeter formula") {
    const ConvexPolygon square = ConvexPolygon::from_ccw_ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(inflated_perimeter(square, 1.0) ==
          doctest::Approx(4.0 + 2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(inflated_perimeter(square, 0.0) == doctest::Approx(4.0));

    // discretized Minkowski oracle
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ConvexPolygon Q = random_hull(24, seed);
        for (double r : {0.1, 1.0}) {
            const int samples = 4096;
            std::vector<Point2> ring;
            for (int i = 0; i < samples; ++i) {
                const double ang = 2.0 * std::numbers::pi * i / samples;
                const Point2 dir{std::cos(ang), std::sin(ang)};
                double best = -1e300;
                Point2 arg{};
                for (const Point2& v : Q.vertices()) {
                    const double t = dot(v, dir);
                    if (t > best) {
                        best = t;
                        arg = v;
                    }
                }
                ring.push_back(arg + dir * r);
            }
            std::vector<Point2> dedup;
            for (const auto& p : ring)
                if (dedup.empty() || dist(dedup.back(), p) > 1e-12) dedup.push_back(p);
            CHECK(std::abs(polygon_perimeter(dedup) - inflated_perimeter(Q, r)) <= 1e-4);
        }
    }
}

TEST_CASE("width integral converges to the perimeter") {
    const ConvexPolygon disk = regular_ngon(720);
    CHECK(std::abs(width_integral(disk, 4096) - disk.perimeter()) <= 1e-3);
    CHECK(std::abs(width_integral(disk, 4096) - 2.0 * std::numbers::pi) <= 1e-2);

    const ConvexPolygon square = ConvexPolygon::from_ccw_ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(std::abs(width_integral(square, 4096) - 4.0) <= 1e-4);

    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const ConvexPolygon Q = random_hull(16 + 8 * static_cast<int>(seed), seed);
        const double integral = width_integral(Q, 1 << 16);
        CHECK(std::abs(integral - Q.perimeter()) / Q.perimeter() <= 1e-6);
    }
}

TEST_CASE("oracle on degenerate sizes") {
    const ConvexInstance one = circle_pairs({{10.0, 200.0}});
    const OracleResult res = oracle_convex(one);
    CHECK(res.perimeter == 0.0);
    CHECK(res.cycle.vertices.size() == 1);

    // two pairs on the unit square: adjacent-corner selection of perimeter 2
    ConvexInstance two = ConvexInstance::create(
        {{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}});
    const OracleResult res2 = oracle_convex(two);
    CHECK(res2.perimeter == doctest::Approx(2.0));
}

TEST_CASE("oracle matches an independent enumeration") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const ConvexInstance inst = ConvexInstance::from_instance(gen_convex(10, seed));
        const OracleResult res = oracle_convex(inst);
        CHECK(res.perimeter == doctest::Approx(oracle_reference(inst)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(oracle_convex(ConvexInstance::from_instance(gen_convex(17, 0))), TooLarge);
}

TEST_CASE("ptas equals the oracle when the subset cap covers all pairs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ConvexInstance inst = ConvexInstance::from_instance(gen_convex(9, seed));
        const OracleResult oracle = oracle_convex(inst);
        const PtasResult ptas = ptas_a1(inst, 0.5);
        CHECK(ptas.k >= inst.n());
        CHECK(ptas.perimeter == doctest::Approx(oracle.perimeter).epsilon(1e-12));
        CHECK(ptas.perimeter >= oracle.perimeter - 1e-12);
    }
}

TEST_CASE("ptas stays within the factor bound for several eps") {
    for (double eps : {0.2, 0.5, 1.0}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const ConvexInstance inst = ConvexInstance::from_instance(gen_convex(7, seed + 50));
            const OracleResult oracle = oracle_convex(inst);
            const PtasResult ptas = ptas_a1(inst, eps);
            CHECK(ptas.perimeter <= (1.0 + 4.0 * eps) * oracle.perimeter + 1e-12);
            CHECK(ptas.perimeter >= oracle.perimeter - 1e-12);
        }
    }
}

TEST_CASE("ptas single pair") {
    const ConvexInstance one = circle_pairs({{10.0, 200.0}});
    const PtasResult res = ptas_a1(one, 0.5);
    CHECK(res.perimeter == 0.0);
}

TEST_CASE("clustered-pairs instance exhibits an infeasible candidate") {
    // Three pairs span a tight arc at the top and a tight arc at the bottom; four
    // more pairs each offer one point near the top. The bottom-cluster candidate
    // cannot cover the remote pairs while the top-cluster candidate can.
    const ConvexInstance inst = circle_pairs({{80, 265},
                                              {90, 270},
                                              {100, 275},
                                              {70, 190},
                                              {75, 210},
                                              {105, 330},
                                              {110, 350}});
    const double eps = 0.5;
    CHECK_FALSE(ptas_candidate_feasible(inst, {0, 1, 2}, 0b111, eps));  // bottom endpoints
    CHECK(ptas_candidate_feasible(inst, {0, 1, 2}, 0b000, eps));        // top endpoints
    const OracleResult oracle = oracle_convex(inst);
    const PtasResult ptas = ptas_a1(inst, eps);
    CHECK(ptas.perimeter <= (1.0 + 4.0 * eps) * oracle.perimeter + 1e-12);
}

TEST_CASE("convex instance validation") {
    // midpoint of a square edge is not in strictly convex position with the corners
    CHECK_THROWS_AS(ConvexInstance::create({{{0, 0}, {1, 0}}, {{0.5, 0}, {0, 1}}}),
                    ValidationError);
}

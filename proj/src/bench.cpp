#include "sepcycle/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sepcycle/approx.hpp"
#include "sepcycle/convex.hpp"
#include "sepcycle/cycle2d.hpp"
#include "sepcycle/instances.hpp"
#include "sepcycle/poly3d.hpp"

namespace sepcycle {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class Csv {
public:
    explicit Csv(bool walltime) : walltime_(walltime) {}

    void header(const std::vector<std::string>& cols) {
        row_strings(cols, /*is_header=*/true);
    }

    void row(const std::vector<std::string>& cols, double wall_ms) {
        wall_ms_ = wall_ms;
        row_strings(cols, false);
    }

    std::string str() const { return out_.str(); }

private:
    void row_strings(const std::vector<std::string>& cols, bool is_header) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out_ << ",";
            out_ << cols[i];
        }
        if (walltime_) out_ << "," << (is_header ? "wall_ms" : num(wall_ms_));
        out_ << "\n";
    }

    std::ostringstream out_;
    bool walltime_;
    double wall_ms_ = 0.0;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::vector<Point2> uniform_square(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {uniform01(rng()), uniform01(rng())};
    return pts;
}

std::string suite_few_bounds(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"n", "seed", "length", "bound", "ok"});
    for (int n : {10, 100, 1000}) {
        for (auto seed : seeds) {
            Stopwatch sw;
            const auto pts = uniform_square(n, seed);
            const FewPath fp = few_path_2d(pts, 1.0, 1.0);
            const double bound = std::sqrt(2.0 * n) + 1.75;
            csv.row({std::to_string(n), std::to_string(seed), num(fp.length), num(bound),
                     fp.length <= bound ? "true" : "false"},
                    sw.ms());
        }
    }
    return csv.str();
}

std::string suite_lemma4(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"m", "eps", "seed", "q_size", "q_bound", "contained"});
    for (int m : {50, 200, 500}) {
        for (double eps : {0.01, 0.04, 0.09}) {
            for (auto seed : seeds) {
                Stopwatch sw;
                const ConvexPolygon P = ConvexPolygon::from_ccw_ring(gen_convex_ring(m, seed));
                const auto [Q, trace] = approx_subpolygon(P, eps);
                const bool ok = verify_approx(P, Q, eps);
                csv.row({std::to_string(m), num(eps), std::to_string(seed),
                         std::to_string(Q.size()), std::to_string(trace.q_bound),
                         ok ? "true" : "false"},
                        sw.ms());
            }
        }
    }
    return csv.str();
}

std::string suite_ptas_vs_oracle(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"n", "eps", "seed", "oracle", "ptas", "ratio", "bound"});
    for (int n : {4, 6, 8}) {
        for (double eps : {0.2, 0.5}) {
            for (auto seed : seeds) {
                Stopwatch sw;
                const ConvexInstance inst = ConvexInstance::from_instance(gen_convex(n, seed));
                const OracleResult oracle = oracle_convex(inst);
                const PtasResult ptas = ptas_a1(inst, eps);
                const double ratio =
                    oracle.perimeter > 0.0 ? ptas.perimeter / oracle.perimeter : 1.0;
                csv.row({std::to_string(n), num(eps), std::to_string(seed), num(oracle.perimeter),
                         num(ptas.perimeter), num(ratio), num(1.0 + 4.0 * eps)},
                        sw.ms());
            }
        }
    }
    return csv.str();
}

std::string suite_sqrt_ratio(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"instance", "n", "seed", "length", "lower_bound", "ratio"});
    for (int n : {4, 8, 12}) {
        for (auto seed : seeds) {
            Stopwatch sw;
            const GeomInstance inst = gen_random_matching(n, seed);
            const DiamSelection lb = min_diam_selection(inst);
            const SqrtApproxResult res = sqrt_approx(inst);
            const double denom = std::max(lb.lower_bound, 16.0 * res.cycle.offset);
            csv.row({"matching", std::to_string(n), std::to_string(seed), num(res.cycle.length()),
                     num(lb.lower_bound), num(res.cycle.length() / denom)},
                    sw.ms());
        }
    }
    for (int k : {2, 3, 4, 5}) {
        Stopwatch sw;
        const GeomInstance inst = gen_grid_hard(k);
        const SqrtApproxResult res = sqrt_approx(inst);
        // Pure-side transversal bound: either unit-square grid has diameter sqrt(2).
        const double lb = 2.0 * std::numbers::sqrt2;
        csv.row({"grid", std::to_string(k * k), "0", num(res.cycle.length()), num(lb),
                 num(res.cycle.length() / lb)},
                sw.ms());
    }
    return csv.str();
}

std::string suite_cauchy(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"m", "seed", "perimeter", "width_integral", "rel_err", "minkowski_err_r01",
                "minkowski_err_r1"});
    for (int m : {8, 32, 64}) {
        for (auto seed : seeds) {
            Stopwatch sw;
            const ConvexPolygon Q = ConvexPolygon::from_ccw_ring(gen_convex_ring(m, seed));
            const double integral = width_integral(Q, 1 << 16);
            const double rel = std::abs(integral - Q.perimeter()) / Q.perimeter();
            // Discretized Minkowski sum: vertices pushed outward over sampled normals.
            auto minkowski_err = [&](double r) {
                const int samples = 4096;
                std::vector<Point2> ring;
                ring.reserve(samples);
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
                return std::abs(polygon_perimeter(dedup) - inflated_perimeter(Q, r));
            };
            csv.row({std::to_string(m), std::to_string(seed), num(Q.perimeter()), num(integral),
                     num(rel), num(minkowski_err(0.1)), num(minkowski_err(1.0))},
                    sw.ms());
        }
    }
    return csv.str();
}

std::string suite_poly3d(const std::vector<std::uint64_t>& seeds, bool wall) {
    Csv csv(wall);
    csv.header({"n", "seed", "watertight", "euler", "perimeter", "perimeter_bound", "ok"});
    for (int n : {10, 30}) {
        for (auto seed : seeds) {
            Stopwatch sw;
            const GeomInstance inst = gen_random_graph(n, n, seed, /*planted_bipartite=*/true, 3);
            const TubePolyhedron tube = build_separating_polyhedron(inst);
            const bool water = tube.mesh.watertight_manifold();
            const long euler = tube.mesh.euler_characteristic();
            const double bound = 5.0 * tube.skeleton_length +
                                 32.0 * static_cast<double>(tube.skeleton.size()) * tube.delta;
            const bool ok = water && euler == 2 && tube.perimeter <= bound;
            csv.row({std::to_string(n), std::to_string(seed), water ? "true" : "false",
                     std::to_string(euler), num(tube.perimeter), num(bound),
                     ok ? "true" : "false"},
                    sw.ms());
        }
    }
    return csv.str();
}

}  // namespace

std::vector<std::string> known_suites() {
    return {"few-bounds", "lemma4", "ptas-vs-oracle", "sqrt-ratio", "cauchy", "poly3d"};
}

bool is_known_suite(const std::string& suite) {
    for (const auto& s : known_suites())
        if (s == suite) return true;
    return false;
}

std::string run_bench_suite(const std::string& suite, const std::vector<std::uint64_t>& seeds,
                            bool include_walltime) {
    if (suite == "few-bounds") return suite_few_bounds(seeds, include_walltime);
    if (suite == "lemma4") return suite_lemma4(seeds, include_walltime);
    if (suite == "ptas-vs-oracle") return suite_ptas_vs_oracle(seeds, include_walltime);
    if (suite == "sqrt-ratio") return suite_sqrt_ratio(seeds, include_walltime);
    if (suite == "cauchy") return suite_cauchy(seeds, include_walltime);
    if (suite == "poly3d") return suite_poly3d(seeds, include_walltime);
    throw ValidationError("unknown bench suite: " + suite);
}

}  // namespace sepcycle

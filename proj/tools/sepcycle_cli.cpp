// Command-line surface: feasibility checks, solvers, generators and benches.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepcycle/approx.hpp"
#include "sepcycle/bench.hpp"
#include "sepcycle/convex.hpp"
#include "sepcycle/cycle2d.hpp"
#include "sepcycle/geom.hpp"
#include "sepcycle/hypergraph.hpp"
#include "sepcycle/instances.hpp"
#include "sepcycle/poly3d.hpp"
#include "sepcycle/svg.hpp"

using namespace sepcycle;

namespace {

// Line-delimited key=value report, optionally mirrored as JSON.
class Report {
public:
    explicit Report(bool as_json) : json_(as_json) {}

    void add(const std::string& key, const std::string& value) {
        entries_.emplace_back(key, value);
    }
    void add(const std::string& key, double value) {
        std::ostringstream ss;
        ss.precision(17);
        ss << value;
        entries_.emplace_back(key, ss.str());
    }
    void add(const std::string& key, long long value) { entries_.emplace_back(key, std::to_string(value)); }

    void print() const {
        if (json_) {
            nlohmann::ordered_json j;
            for (const auto& [k, v] : entries_) j[k] = v;
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : entries_) std::cout << k << "=" << v << "\n";
        }
    }

private:
    bool json_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string color_string(const Coloring& coloring) {
    std::string s;
    for (VColor c : coloring.color) s += (c == VColor::Red ? 'R' : 'B');
    return s;
}

std::string join_ints(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(xs[i]);
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::string cycle_to_json(const SimpleCycle& cycle) {
    nlohmann::ordered_json doc;
    doc["type"] = "cycle";
    doc["length"] = cycle.length();
    doc["offset"] = cycle.offset;
    doc["area"] = cycle.area;
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (const Point2& p : cycle.vertices) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        row.push_back(p.x);
        row.push_back(p.y);
        verts.push_back(row);
    }
    doc["vertices"] = verts;
    return doc.dump(2) + "\n";
}

GeomInstance load_and_scale_tolerance(const std::string& path, double tol_flag) {
    GeomInstance inst = load_instance_file(path);
    const double diag = inst.bbox_diagonal();
    set_geometry_tolerance(tol_flag * std::max(diag, 1.0));
    return inst;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) seeds.push_back(0);
    return seeds;
}

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

int run_check(const std::string& path, int size_guard, bool as_json, double tol_flag) {
    Stopwatch sw;
    const GeomInstance inst = load_and_scale_tolerance(path, tol_flag);
    Report report(as_json);
    report.add("command", std::string("check"));
    report.add("instance", path);
    report.add("name", inst.meta.name);
    report.add("n", static_cast<long long>(inst.num_points()));
    report.add("m", static_cast<long long>(inst.edges.size()));

    const Hypergraph h = inst.hypergraph();
    bool feasible = false;
    if (h.is_graph()) {
        const BipartitionResult bip = bipartition(h);
        feasible = bip.feasible();
        report.add("method", std::string("bipartition"));
        if (feasible)
            report.add("coloring", color_string(*bip.coloring));
        else
            report.add("odd_cycle", join_ints(bip.odd_cycle));
    } else {
        if (inst.num_points() > size_guard) {
            std::cerr << "error: hypergraph has " << inst.num_points()
                      << " vertices, above the exact-search size guard " << size_guard
                      << " (raise with --size-guard)\n";
            return 2;
        }
        const auto coloring = two_color_exact(h);
        feasible = coloring.has_value();
        report.add("method", std::string("two_color_exact"));
        if (feasible) report.add("coloring", color_string(*coloring));
    }
    report.add("status", std::string(feasible ? "FEASIBLE" : "INFEASIBLE"));
    report.add("tolerance", geometry_tolerance());
    report.add("wall_ms", sw.ms());
    report.print();
    return feasible ? 0 : 1;
}

int run_solve(const std::string& path, const std::string& mode, double eps,
              const std::string& render_path, int size_guard, bool as_json, double tol_flag,
              std::uint64_t seed) {
    Stopwatch sw;
    const GeomInstance inst = load_and_scale_tolerance(path, tol_flag);
    Report report(as_json);
    report.add("command", std::string("solve"));
    report.add("mode", mode);
    report.add("instance", path);
    report.add("name", inst.meta.name);
    report.add("n", static_cast<long long>(inst.num_points()));
    report.add("m", static_cast<long long>(inst.edges.size()));
    report.add("seed", static_cast<long long>(seed));

    std::optional<SimpleCycle> cycle;
    std::optional<TubePolyhedron> tube;
    std::string solution_path;

    try {
        if (mode == "construct") {
            if (inst.dim != 2) {
                std::cerr << "error: mode=construct requires a 2D instance\n";
                return 2;
            }
            Coloring coloring;
            if (inst.colors) {
                coloring.color = *inst.colors;
                coloring.component = hyper_components(inst.hypergraph());
                int ncomp = 0;
                for (int c : coloring.component) ncomp = std::max(ncomp, c + 1);
                coloring.flipped.assign(ncomp, false);
                report.add("coloring_source", std::string("instance"));
            } else if (inst.is_graph()) {
                const BipartitionResult bip = bipartition(inst.hypergraph());
                if (!bip.feasible()) {
                    report.add("status", std::string("INFEASIBLE"));
                    report.add("odd_cycle", join_ints(bip.odd_cycle));
                    report.print();
                    return 1;
                }
                coloring = *bip.coloring;
                report.add("coloring_source", std::string("bipartition"));
            } else {
                if (inst.num_points() > size_guard) {
                    std::cerr << "error: hypergraph above the size guard (raise with --size-guard)\n";
                    return 2;
                }
                const auto found = two_color_exact(inst.hypergraph());
                if (!found) {
                    report.add("status", std::string("INFEASIBLE"));
                    report.print();
                    return 1;
                }
                coloring = *found;
                report.add("coloring_source", std::string("two_color_exact"));
            }
            cycle = build_separating_cycle(inst, coloring);
        } else if (mode == "sqrt") {
            const SqrtApproxResult res = sqrt_approx(inst);
            cycle = res.cycle;
            if (inst.is_matching() && static_cast<int>(inst.edges.size()) <= 14) {
                const DiamSelection lb = min_diam_selection(inst);
                report.add("lower_bound", lb.lower_bound);
                const double denom = std::max(lb.lower_bound, 16.0 * res.cycle.offset);
                report.add("ratio", res.cycle.length() / denom);
            }
        } else if (mode == "oracle" || mode == "ptas") {
            const ConvexInstance conv = ConvexInstance::from_instance(inst);
            if (conv.n() > size_guard) {
                std::cerr << "error: " << conv.n()
                          << " pairs above the enumeration size guard (raise with --size-guard)\n";
                return 2;
            }
            if (mode == "oracle") {
                const OracleResult res = oracle_convex(conv, size_guard);
                cycle = res.cycle;
                report.add("optimal", std::string("true"));
            } else {
                const double internal_eps = eps / 4.0;  // user-facing target ratio is 1 + eps
                report.add("eps_user", eps);
                report.add("eps_internal", internal_eps);
                const PtasResult res = ptas_a1(conv, internal_eps);
                cycle = res.cycle;
                report.add("subset_cap", static_cast<long long>(res.k));
                const OracleResult oracle = conv.n() <= 12 ? oracle_convex(conv)
                                                           : OracleResult{};
                if (conv.n() <= 12 && oracle.perimeter > 0.0) {
                    report.add("lower_bound", oracle.perimeter);
                    report.add("ratio", res.perimeter / oracle.perimeter);
                }
            }
        } else if (mode == "poly3d") {
            if (inst.dim != 3) {
                std::cerr << "error: mode=poly3d requires a 3D instance\n";
                return 2;
            }
            tube = build_separating_polyhedron(inst);
        } else {
            std::cerr << "error: unknown mode " << mode << "\n";
            return 2;
        }
    } catch (const Infeasible& e) {
        report.add("status", std::string("INFEASIBLE"));
        if (!e.odd_cycle.empty()) report.add("odd_cycle", join_ints(e.odd_cycle));
        report.print();
        return 1;
    }

    if (cycle) {
        solution_path = path + ".solution.json";
        write_file(solution_path, cycle_to_json(*cycle));
        report.add("status", std::string("SOLVED"));
        report.add("length", cycle->length());
        report.add("area", cycle->area);
        report.add("offset", cycle->offset);
        report.add("vertices", static_cast<long long>(cycle->vertices.size()));
    } else if (tube) {
        solution_path = path + ".solution.off";
        write_file(solution_path, mesh_to_off(tube->mesh));
        report.add("status", std::string("SOLVED"));
        report.add("perimeter", tube->perimeter);
        report.add("delta", tube->delta);
        report.add("mesh_vertices", static_cast<long long>(tube->mesh.vertices.size()));
        report.add("mesh_faces", static_cast<long long>(tube->mesh.faces.size()));
    }
    report.add("solution_file", solution_path);

    if (!render_path.empty()) {
        RenderOptions opts;
        if (cycle) opts.cycle = &*cycle;
        if (tube) opts.tube = &*tube;
        write_file(render_path, render_svg(inst, opts));
        report.add("render", render_path);
    }
    report.add("tolerance", geometry_tolerance());
    report.add("wall_ms", sw.ms());
    report.print();
    return 0;
}

int run_bench(const std::string& suite, const std::string& seeds_text, const std::string& out_path,
              bool as_json) {
    if (!is_known_suite(suite)) {
        std::cerr << "error: unknown suite " << suite << " (known:";
        for (const auto& s : known_suites()) std::cerr << " " << s;
        std::cerr << ")\n";
        return 2;
    }
    Stopwatch sw;
    const auto seeds = parse_seed_list(seeds_text);
    const std::string csv = run_bench_suite(suite, seeds, /*include_walltime=*/true);
    write_file(out_path, csv);
    Report report(as_json);
    report.add("command", std::string("bench"));
    report.add("suite", suite);
    report.add("seeds", seeds_text);
    report.add("out", out_path);
    report.add("rows", static_cast<long long>(std::count(csv.begin(), csv.end(), '\n') - 1));
    report.add("wall_ms", sw.ms());
    report.print();
    return 0;
}

int run_gen(const std::string& type, int k, int n, int m, int len, int max_edge_size,
            std::uint64_t seed, int dim, const std::string& out_path, bool as_json) {
    GeomInstance inst;
    if (type == "grid")
        inst = gen_grid_hard(k);
    else if (type == "convex")
        inst = gen_convex(n, seed);
    else if (type == "triangle")
        inst = gen_infeasible_triangle();
    else if (type == "odd-cycle")
        inst = gen_odd_cycle(len);
    else if (type == "even-cycle")
        inst = gen_even_cycle(len);
    else if (type == "escape")
        inst = gen_escape_square();
    else if (type == "matching")
        inst = gen_random_matching(n, seed, dim);
    else if (type == "graph")
        inst = gen_random_graph(n, m, seed, /*planted_bipartite=*/false, dim);
    else if (type == "bipartite")
        inst = gen_random_graph(n, m, seed, /*planted_bipartite=*/true, dim);
    else if (type == "hypergraph")
        inst = gen_random_hypergraph(n, m, max_edge_size, seed);
    else {
        std::cerr << "error: unknown generator type " << type << "\n";
        return 2;
    }
    save_instance_file(inst, out_path);
    Report report(as_json);
    report.add("command", std::string("gen"));
    report.add("type", type);
    report.add("name", inst.meta.name);
    report.add("n", static_cast<long long>(inst.num_points()));
    report.add("m", static_cast<long long>(inst.edges.size()));
    report.add("out", out_path);
    report.print();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Separating cycles and polyhedra for geometric graphs and hypergraphs.\n"
        "Feasibility equals 2-colorability; constructions produce zero-area offset\n"
        "contours (2D) and zero-volume tubes (3D). For mode=ptas, --eps is the\n"
        "user-facing target ratio 1+eps; internally the scheme runs at eps/4."};
    app.require_subcommand(1);

    bool as_json = false;
    double tol_flag = 1e-9;  // scaled by the instance diameter at load time
    app.add_flag("--json", as_json, "emit the report as JSON instead of key=value lines");
    app.add_option("--tolerance", tol_flag,
                   "incidence tolerance per unit of instance diameter (default 1e-9)");

    auto* check = app.add_subcommand("check", "decide feasibility (exit 0 feasible, 1 infeasible)");
    std::string check_path;
    int check_guard = 24;
    check->add_option("instance", check_path, "instance file")->required();
    check->add_option("--size-guard", check_guard,
                      "max vertex count for the exact hypergraph search (default 24)");

    auto* solve = app.add_subcommand("solve", "construct or approximate a separating solution");
    std::string solve_path, solve_mode = "construct", render_path;
    double solve_eps = 0.5;
    int solve_guard = 16;
    std::uint64_t solve_seed = 0;
    solve->add_option("instance", solve_path, "instance file")->required();
    solve->add_option("--mode", solve_mode, "construct | sqrt | ptas | oracle | poly3d")
        ->check(CLI::IsMember({"construct", "sqrt", "ptas", "oracle", "poly3d"}));
    solve->add_option("--eps", solve_eps, "target ratio parameter for mode=ptas (default 0.5)");
    solve->add_option("--seed", solve_seed, "seed recorded in the report (construction is deterministic)");
    solve->add_option("--render", render_path, "also write an SVG rendering to this path");
    solve->add_option("--size-guard", solve_guard,
                      "max pair count for oracle/ptas enumeration (default 16)");

    auto* bench = app.add_subcommand("bench", "run a benchmark suite and write a CSV table");
    std::string bench_suite, bench_seeds = "0", bench_out = "bench.csv";
    bench->add_option("--suite", bench_suite, "few-bounds | lemma4 | ptas-vs-oracle | sqrt-ratio | cauchy | poly3d")
        ->required();
    bench->add_option("--seeds", bench_seeds, "comma-separated seed list (default 0)");
    bench->add_option("--out", bench_out, "output CSV path (default bench.csv)");

    auto* gen = app.add_subcommand("gen", "write a generated instance file");
    std::string gen_type, gen_out = "instance.json";
    int gen_k = 3, gen_n = 8, gen_m = 8, gen_len = 5, gen_dim = 2, gen_max_edge = 4;
    std::uint64_t gen_seed = 0;
    gen->add_option("--type", gen_type,
                    "grid | convex | triangle | odd-cycle | even-cycle | escape | matching | "
                    "graph | bipartite | hypergraph")
        ->required();
    gen->add_option("--k", gen_k, "grid side (type=grid)");
    gen->add_option("--n", gen_n, "pair/vertex count");
    gen->add_option("--m", gen_m, "edge count (graph/hypergraph)");
    gen->add_option("--len", gen_len, "cycle length (odd-cycle/even-cycle)");
    gen->add_option("--max-edge-size", gen_max_edge, "max hyperedge size (type=hypergraph)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--dim", gen_dim, "2 or 3 (matching/graph/bipartite)");
    gen->add_option("--out", gen_out, "output path (default instance.json)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(check_path, check_guard, as_json, tol_flag);
        if (solve->parsed())
            return run_solve(solve_path, solve_mode, solve_eps, render_path, solve_guard, as_json,
                             tol_flag, solve_seed);
        if (bench->parsed()) return run_bench(bench_suite, bench_seeds, bench_out, as_json);
        if (gen->parsed())
            return run_gen(gen_type, gen_k, gen_n, gen_m, gen_len, gen_max_edge, gen_seed, gen_dim,
                           gen_out, as_json);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

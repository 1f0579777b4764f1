#include "sepcycle/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sepcycle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

GuessRectangle::GuessRectangle(const Point2& pa, const Point2& pb) : a(pa), b(pb) {
    mid = (pa + pb) * 0.5;
    const double len = dist(pa, pb);
    u = len > 0.0 ? (pb - pa) * (1.0 / len) : Point2{1.0, 0.0};
    v = perp_left(u);
    half_w = len / 2.0;
    half_h = kSqrt3 * len / 2.0;
}

bool GuessRectangle::contains(const Point2& p, double tol) const {
    const Point2 d = p - mid;
    return std::abs(dot(d, u)) <= half_w + tol && std::abs(dot(d, v)) <= half_h + tol;
}

Point2 GuessRectangle::to_frame(const Point2& p) const {
    const Point2 d = p - mid;
    return {dot(d, u) + half_w, dot(d, v) + half_h};
}

FewPath few_path_2d(const std::vector<Point2>& pts, double rect_width, double rect_height) {
    FewPath path;
    const int n = static_cast<int>(pts.size());
    if (n == 0) return path;
    path.order.resize(n);
    for (int i = 0; i < n; ++i) path.order[i] = i;
    if (n == 1) {
        path.strips = 1;
        path.bound = rect_width + rect_height;
        return path;
    }

    const double W = std::max(rect_width, 0.0);
    const double H = std::max(rect_height, 0.0);

    // Strip count minimizing the a-priori bound (s + 1/2) W + H + n H / (2s).
    auto bound_for = [&](int s) { return (s + 0.5) * W + H + n * H / (2.0 * s); };
    int s = 1;
    double best = bound_for(1);
    for (int cand = 2; cand <= n + 1; ++cand) {
        const double val = bound_for(cand);
        if (val < best) {
            best = val;
            s = cand;
        }
    }
    path.strips = s;
    path.bound = best;

    // Two interleaved horizontal line families; keep the one with the smaller
    // line-sweep-plus-detour cost. Ties in nearest-line assignment go to the
    // lower line.
    const double spacing = H > 0.0 ? H / s : 1.0;
    auto nearest_a = [&](double y) {
        int j = static_cast<int>(std::floor(y / spacing + 0.5));
        if (y / spacing + 0.5 == std::floor(y / spacing + 0.5) && j > 0) --j;  // tie: lower
        return std::clamp(j, 0, s);
    };
    auto nearest_b = [&](double y) {
        int j = static_cast<int>(std::floor(y / spacing));
        if (y / spacing == std::floor(y / spacing) && j > 0) --j;  // tie: lower
        return std::clamp(j, 0, s - 1);
    };
    double detour_a = 0.0, detour_b = 0.0;
    for (const Point2& p : pts) {
        detour_a += std::abs(p.y - nearest_a(p.y) * spacing);
        detour_b += std::abs(p.y - (nearest_b(p.y) + 0.5) * spacing);
    }
    const double cost_a = (s + 1) * W + 2.0 * detour_a;
    const double cost_b = s * W + 2.0 * detour_b;
    const bool use_a = cost_a <= cost_b;

    std::vector<int> line(n);
    for (int i = 0; i < n; ++i) line[i] = use_a ? nearest_a(pts[i].y) : nearest_b(pts[i].y);

    std::sort(path.order.begin(), path.order.end(), [&](int i, int j) {
        if (line[i] != line[j]) return line[i] < line[j];
        const bool reversed = line[i] % 2 != 0;  // alternate sweep direction per line
        if (pts[i].x != pts[j].x) return reversed ? pts[i].x > pts[j].x : pts[i].x < pts[j].x;
        if (pts[i].y != pts[j].y) return pts[i].y < pts[j].y;
        return i < j;
    });

    for (int i = 0; i + 1 < n; ++i)
        path.length += dist(pts[path.order[i]], pts[path.order[i + 1]]);
    return path;
}

DiamSelection min_diam_selection(const GeomInstance& matching, int limit) {
    if (!matching.is_matching()) throw NotAGraph("min_diam_selection requires a matching");
    const int n = static_cast<int>(matching.edges.size());
    if (n > limit) throw TooLarge("min_diam_selection limited to " + std::to_string(limit) + " pairs");
    const auto pts = matching.points2();

    DiamSelection best;
    best.diameter = kInf;
    std::vector<Point2> chosen(n);
    std::vector<int> pick(n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        for (int i = 0; i < n; ++i) {
            pick[i] = matching.edges[i][(mask >> i) & 1ull];
            chosen[i] = pts[pick[i]];
        }
        double diam = 0.0;
        for (int i = 0; i < n && diam < best.diameter; ++i)
            for (int j = i + 1; j < n; ++j) diam = std::max(diam, dist(chosen[i], chosen[j]));
        if (diam < best.diameter) {
            best.diameter = diam;
            best.selection = pick;
        }
    }
    best.lower_bound = 2.0 * best.diameter;
    return best;
}

SqrtApproxResult sqrt_approx(const GeomInstance& inst) {
    if (inst.dim != 2) throw ValidationError("sqrt_approx expects a 2D instance");
    if (!inst.is_graph()) throw NotAGraph("sqrt_approx requires a graph instance");
    if (inst.edges.empty()) throw ValidationError("sqrt_approx requires at least one edge");

    const Hypergraph g = inst.hypergraph();
    BipartitionResult bip = bipartition(g);
    if (!bip.feasible()) throw Infeasible("instance contains an odd cycle", bip.odd_cycle);
    const Coloring& base = *bip.coloring;

    const int n = inst.num_points();
    const auto pts = inst.points2();
    int ncomp = 0;
    for (int c : base.component) ncomp = std::max(ncomp, c + 1);
    std::vector<std::vector<int>> comp_red(ncomp), comp_blue(ncomp);
    for (int vtx = 0; vtx < n; ++vtx)
        (base.color[vtx] == VColor::Red ? comp_red : comp_blue)[base.component[vtx]].push_back(vtx);

    SqrtApproxResult result;
    double best_len = kInf;

    std::vector<char> red_flag(n);
    for (int ai = 0; ai < n; ++ai) {
        for (int bi = ai + 1; bi < n; ++bi) {
            const GuessRectangle rect(pts[ai], pts[bi]);
            CandidateOutcome outcome;
            outcome.a = ai;
            outcome.b = bi;

            bool abandoned = false;
            std::fill(red_flag.begin(), red_flag.end(), 0);
            for (int c = 0; c < ncomp && !abandoned; ++c) {
                auto all_in = [&](const std::vector<int>& side) {
                    return std::all_of(side.begin(), side.end(),
                                       [&](int vtx) { return rect.contains(pts[vtx]); });
                };
                const std::vector<int>* reds = &comp_red[c];
                if (!all_in(comp_red[c])) {
                    if (all_in(comp_blue[c]))
                        reds = &comp_blue[c];  // flip this component
                    else {
                        abandoned = true;
                        break;
                    }
                }
                for (int vtx : *reds) red_flag[vtx] = 1;
            }
            if (abandoned) {
                outcome.abandoned = true;
                result.trace.push_back(outcome);
                continue;
            }

            std::vector<Point2> reds, blues, frame;
            std::vector<int> red_ids;
            for (int vtx = 0; vtx < n; ++vtx) {
                if (red_flag[vtx]) {
                    reds.push_back(pts[vtx]);
                    red_ids.push_back(vtx);
                    frame.push_back(rect.to_frame(pts[vtx]));
                } else {
                    blues.push_back(pts[vtx]);
                }
            }
            if (reds.empty()) {  // only isolated vertices flipped away; nothing to enclose
                outcome.abandoned = true;
                result.trace.push_back(outcome);
                continue;
            }

            const FewPath fp = few_path_2d(frame, rect.width(), rect.height());
            SimpleCycle cycle;
            try {
                cycle = cycle_around(reds, blues, path_tree(reds, fp.order));
            } catch (const DegenerateGeometry&) {
                outcome.abandoned = true;  // numerically unusable candidate
                result.trace.push_back(outcome);
                continue;
            }
            outcome.length = cycle.length();
            result.trace.push_back(outcome);
            if (outcome.length < best_len) {
                best_len = outcome.length;
                result.cycle = std::move(cycle);
                result.best_a = ai;
                result.best_b = bi;
            }
        }
    }
    if (!std::isfinite(best_len))
        throw Error("no usable candidate pair (unreachable for feasible inputs)");
    return result;
}

}  // namespace sepcycle

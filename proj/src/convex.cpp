#include "sepcycle/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace sepcycle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConvexInstance ConvexInstance::create(std::vector<std::pair<Point2, Point2>> pairs) {
    ConvexInstance inst;
    inst.pairs = std::move(pairs);
    if (inst.pairs.empty()) throw ValidationError("convex instance needs at least one pair");
    const auto pts = inst.all_points();
    if (pts.size() >= 3) {
        const ConvexPolygon hull = convex_hull(pts);
        if (hull.size() != pts.size())
            throw ValidationError("points are not in strictly convex position");
    }
    return inst;
}

ConvexInstance ConvexInstance::from_instance(const GeomInstance& inst) {
    if (inst.dim != 2) throw ValidationError("convex instance must be 2D");
    if (!inst.is_matching()) throw ValidationError("convex instance must be a matching");
    if (2 * static_cast<int>(inst.edges.size()) != inst.num_points())
        throw ValidationError("convex instance must pair every point");
    std::vector<std::pair<Point2, Point2>> pairs;
    for (const auto& e : inst.edges) pairs.emplace_back(inst.pt2(e[0]), inst.pt2(e[1]));
    return create(std::move(pairs));
}

std::vector<Point2> ConvexInstance::all_points() const {
    std::vector<Point2> pts;
    pts.reserve(2 * pairs.size());
    for (const auto& [p, q] : pairs) {
        pts.push_back(p);
        pts.push_back(q);
    }
    return pts;
}

// ── Subpolygon approximation ────────────────────────────────────────

double ApproxTrace::alpha_sum() const {
    double s = 0.0;
    for (const auto& side : sides)
        if (side.nontrivial) s += side.alpha;
    return s;
}

namespace {

double angle_between(const Point2& u, const Point2& v) {
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

int q_vertex_bound(double eps) {
    return static_cast<int>(std::ceil(10.0 * std::numbers::pi / std::sqrt(eps) + 14.0));
}

}  // namespace

std::pair<ConvexPolygon, ApproxTrace> approx_subpolygon(const ConvexPolygon& P, double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw ValidationError("approx_subpolygon needs 0 < eps < 1");
    const auto& ring = P.vertices();
    const int m = static_cast<int>(ring.size());
    const double eps_len = eps * P.diameter();
    const double short_len = std::sqrt(eps) * P.diameter();

    // Clockwise sequence starting from the lexicographically smallest vertex.
    int start = 0;
    for (int i = 1; i < m; ++i) {
        if (ring[i].x < ring[start].x ||
            (ring[i].x == ring[start].x && ring[i].y < ring[start].y))
            start = i;
    }
    std::vector<Point2> cw(m);
    for (int i = 0; i < m; ++i) cw[i] = ring[((start - i) % m + m) % m];

    ApproxTrace trace;
    trace.eps = eps;
    trace.q_bound = q_vertex_bound(eps);
    trace.r_positions.push_back(0);
    std::vector<int> q_pos{0};

    auto record_side = [&](int from, int to, bool constrained) {
        ApproxTrace::Side side;
        side.from = from;
        side.to = to % m;
        side.length = dist(cw[from], cw[to % m]);
        side.nontrivial = to - from >= 2;
        side.constrained = constrained;
        side.is_short = side.length <= short_len;
        if (side.nontrivial)
            side.alpha = angle_between(cw[from + 1] - cw[from], cw[to % m] - cw[from]);
        trace.sides.push_back(side);
    };

    int a = 0;
    while (a < m) {
        int trigger = -1;
        const int j_max = a == 0 ? m - 1 : m;  // closing chord only once the scan moved
        for (int j = a + 2; j <= j_max && trigger < 0; ++j) {
            const Segment chord{cw[a], cw[j % m]};
            for (int t = a + 1; t < j; ++t) {
                if (dist_point_segment(cw[t], chord) >= eps_len) {
                    trigger = j;
                    break;
                }
            }
        }
        if (trigger < 0) {
            if (a > 0 && a < m) record_side(a, m, false);  // unconstrained closing side
            break;
        }
        record_side(a, trigger, true);
        q_pos.push_back(trigger - 1);
        if (trigger < m) {
            trace.r_positions.push_back(trigger);
            q_pos.push_back(trigger);
        }
        a = trigger;
    }

    std::sort(q_pos.begin(), q_pos.end());
    q_pos.erase(std::unique(q_pos.begin(), q_pos.end()), q_pos.end());
    if (static_cast<int>(q_pos.size()) < 3) q_pos = {0, m - 2, m - 1};
    trace.q_positions = q_pos;

    std::vector<Point2> q_ring;  // clockwise positions reversed give a CCW ring
    for (auto it = q_pos.rbegin(); it != q_pos.rend(); ++it) q_ring.push_back(cw[*it]);
    return {ConvexPolygon::from_ccw_ring(std::move(q_ring)), trace};
}

bool verify_approx(const ConvexPolygon& P, const ConvexPolygon& Q, double eps, double tol) {
    const double r = eps * P.diameter();
    for (const Point2& v : P.vertices())
        if (!inflated_contains(Q, r, v, tol)) return false;
    return true;
}

int min_subpolygon_size(const ConvexPolygon& P, double eps, int exhaustive_limit) {
    if (exhaustive_limit > 6) throw TooLarge("exhaustive subset size limited to 6");
    const auto& ring = P.vertices();
    const int m = static_cast<int>(ring.size());
    const double eps_len = eps * P.diameter();

    // All vertices strictly inside the arc from position u over `step` ring steps
    // lie within eps_len of the chord.
    auto covers = [&](int u, int step) {
        const Segment chord{ring[u % m], ring[(u + step) % m]};
        for (int t = 1; t < step; ++t)
            if (dist_point_segment(ring[(u + t) % m], chord) > eps_len) return false;
        return true;
    };

    int best = m;
    for (int s = 0; s < m; ++s) {
        int consumed = 0;
        int anchors = 0;
        int cur = s;
        while (consumed < m) {
            int step = 1;
            while (step < m - consumed && covers(cur, step + 1)) ++step;
            cur += step;
            consumed += step;
            ++anchors;
            if (anchors >= best) break;  // cannot improve from this start
        }
        best = std::min(best, anchors);
    }
    best = std::max(best, 3);

    // Exhaustive search below the greedy answer for small subset sizes.
    for (int k = 3; k < best && k <= exhaustive_limit; ++k) {
        double work = 1.0;
        for (int i = 0; i < k; ++i) work *= static_cast<double>(m - i) / (i + 1);
        if (work > 2e6) continue;
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        bool found = false;
        while (!found) {
            std::vector<Point2> q_ring;
            for (int i = k - 1; i >= 0; --i) q_ring.push_back(ring[comb[i]]);
            std::reverse(q_ring.begin(), q_ring.end());
            ConvexPolygon q = ConvexPolygon::from_ccw_ring(std::move(q_ring));
            if (verify_approx(P, q, eps)) found = true;
            // next combination (lexicographic)
            int t = k - 1;
            while (t >= 0 && comb[t] == m - k + t) --t;
            if (t < 0) break;
            ++comb[t];
            for (int i = t + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
        }
        if (found) return k;
    }
    return best;
}

double inflated_perimeter(const ConvexPolygon& Q, double r) {
    if (r < 0.0) throw ValidationError("inflation radius must be nonnegative");
    return Q.perimeter() + 2.0 * std::numbers::pi * r;
}

double width_integral(const ConvexPolygon& Q, int samples) {
    if (samples < 64) throw ValidationError("width_integral needs at least 64 samples");
    const double step = std::numbers::pi / samples;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) sum += width(Q, (i + 0.5) * step);
    return sum * step;
}

// ── Selection enumeration ───────────────────────────────────────────

namespace {

// Ring position (counterclockwise hull order) of every instance point.
std::vector<int> ring_positions(const ConvexInstance& inst) {
    const auto pts = inst.all_points();
    if (pts.size() < 3) {
        std::vector<int> pos(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) pos[i] = static_cast<int>(i);
        return pos;
    }
    const ConvexPolygon hull = convex_hull(pts);
    std::map<std::pair<double, double>, int> at;
    for (std::size_t i = 0; i < hull.vertices().size(); ++i)
        at[{hull.vertices()[i].x, hull.vertices()[i].y}] = static_cast<int>(i);
    std::vector<int> pos(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto it = at.find({pts[i].x, pts[i].y});
        if (it == at.end()) throw ValidationError("point missing from convex ring");
        pos[i] = it->second;
    }
    return pos;
}

SimpleCycle ring_cycle(std::vector<std::pair<int, Point2>> by_pos) {
    std::sort(by_pos.begin(), by_pos.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SimpleCycle c;
    for (const auto& [pos, p] : by_pos) c.vertices.push_back(p);
    c.offset = 0.0;
    c.area = c.vertices.size() >= 3 ? polygon_signed_area(c.vertices) : 0.0;
    return c;
}

double dist_to_selection_hull(const std::vector<Point2>& ring, const Point2& p, double tol) {
    if (ring.size() == 1) return dist(ring[0], p);
    if (ring.size() == 2) return dist_point_segment(p, {ring[0], ring[1]});
    if (point_vs_polygon(p, ring, tol) != Region::Exterior) return 0.0;
    double d = kInf;
    for (std::size_t i = 0; i < ring.size(); ++i)
        d = std::min(d, dist_point_segment(p, {ring[i], ring[(i + 1) % ring.size()]}));
    return d;
}

}  // namespace

OracleResult oracle_convex(const ConvexInstance& inst, int limit) {
    const int n = inst.n();
    if (n > limit) throw TooLarge("oracle_convex limited to " + std::to_string(limit) + " pairs");
    const auto pos = ring_positions(inst);

    OracleResult best;
    best.perimeter = kInf;
    std::vector<std::pair<int, Point2>> chosen(n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        for (int i = 0; i < n; ++i) {
            const bool second = (mask >> i) & 1ull;
            const Point2 p = second ? inst.pairs[i].second : inst.pairs[i].first;
            chosen[i] = {pos[2 * i + (second ? 1 : 0)], p};
        }
        std::sort(chosen.begin(), chosen.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        double per = 0.0;
        for (int i = 0; i < n; ++i) per += dist(chosen[i].second, chosen[(i + 1) % n].second);
        if (n == 1) per = 0.0;
        if (per < best.perimeter) {
            best.perimeter = per;
            best.selection.assign(n, 0);
            for (int i = 0; i < n; ++i) best.selection[i] = static_cast<int>((mask >> i) & 1ull);
            best.cycle = ring_cycle(chosen);
        }
    }
    return best;
}

bool ptas_candidate_feasible(const ConvexInstance& inst, const std::vector<int>& pair_subset,
                             std::uint64_t endpoint_mask, double eps) {
    std::vector<Point2> q;
    for (std::size_t j = 0; j < pair_subset.size(); ++j) {
        const auto& pr = inst.pairs[pair_subset[j]];
        q.push_back(((endpoint_mask >> j) & 1ull) ? pr.second : pr.first);
    }
    const auto pos = ring_positions(inst);
    std::vector<std::pair<int, Point2>> by_pos;
    for (std::size_t j = 0; j < pair_subset.size(); ++j) {
        const int second = static_cast<int>((endpoint_mask >> j) & 1ull);
        by_pos.push_back({pos[2 * pair_subset[j] + second], q[j]});
    }
    std::sort(by_pos.begin(), by_pos.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Point2> ring;
    for (const auto& [p, pt] : by_pos) ring.push_back(pt);
    double diam = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i)
        for (std::size_t j = i + 1; j < ring.size(); ++j) diam = std::max(diam, dist(ring[i], ring[j]));
    const double rho = eps * (1.0 + 2.0 * eps) * diam;
    const double tol = geometry_tolerance();
    for (const auto& [p0, p1] : inst.pairs) {
        if (dist_to_selection_hull(ring, p0, tol) > rho + tol &&
            dist_to_selection_hull(ring, p1, tol) > rho + tol)
            return false;
    }
    return true;
}

PtasResult ptas_a1(const ConvexInstance& inst, double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw ValidationError("ptas_a1 needs 0 < eps <= 1");
    const int n = inst.n();
    const auto pos = ring_positions(inst);
    const double tol = geometry_tolerance();

    PtasResult best;
    best.k = q_vertex_bound(eps);
    best.perimeter = kInf;
    const int kk = std::min(best.k, n);

    std::vector<Point2> ring;
    std::vector<int> ring_pos;
    for (int size = 1; size <= kk; ++size) {
        // subsets of `size` pairs in colexicographic order
        std::vector<int> comb(size);
        for (int i = 0; i < size; ++i) comb[i] = i;
        bool more = true;
        while (more) {
            for (std::uint64_t mask = 0; mask < (1ull << size); ++mask) {
                ++best.candidates;
                ring.clear();
                ring_pos.clear();
                std::vector<std::pair<int, Point2>> by_pos;
                double diam = 0.0;
                for (int j = 0; j < size; ++j) {
                    const int second = static_cast<int>((mask >> j) & 1ull);
                    const auto& pr = inst.pairs[comb[j]];
                    by_pos.push_back({pos[2 * comb[j] + second], second ? pr.second : pr.first});
                }
                std::sort(by_pos.begin(), by_pos.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
                for (const auto& [p, pt] : by_pos) ring.push_back(pt);
                for (std::size_t i = 0; i < ring.size(); ++i)
                    for (std::size_t j = i + 1; j < ring.size(); ++j)
                        diam = std::max(diam, dist(ring[i], ring[j]));
                const double rho = eps * (1.0 + 2.0 * eps) * diam;

                // Step 3: the inflated candidate must cover one endpoint per pair.
                bool feasible = true;
                std::vector<std::pair<int, Point2>> selection(n);
                std::vector<int> sel_bits(n, 0);
                for (int i = 0; i < n && feasible; ++i) {
                    const auto& pr = inst.pairs[i];
                    int in_subset = -1;
                    for (int j = 0; j < size; ++j)
                        if (comb[j] == i) in_subset = j;
                    if (in_subset >= 0) {  // the subset's own endpoint is in Q
                        const int second = static_cast<int>((mask >> in_subset) & 1ull);
                        sel_bits[i] = second;
                        selection[i] = {pos[2 * i + second], second ? pr.second : pr.first};
                        continue;
                    }
                    const bool first_in = dist_to_selection_hull(ring, pr.first, tol) <= rho + tol;
                    const bool second_in = dist_to_selection_hull(ring, pr.second, tol) <= rho + tol;
                    if (!first_in && !second_in) {
                        feasible = false;
                    } else if (first_in && second_in) {
                        // both enclosed: lexicographically first point wins
                        const bool take_second = std::make_pair(pr.second.x, pr.second.y) <
                                                 std::make_pair(pr.first.x, pr.first.y);
                        sel_bits[i] = take_second ? 1 : 0;
                        selection[i] = {pos[2 * i + (take_second ? 1 : 0)],
                                        take_second ? pr.second : pr.first};
                    } else {
                        sel_bits[i] = second_in ? 1 : 0;
                        selection[i] = {pos[2 * i + (second_in ? 1 : 0)],
                                        second_in ? pr.second : pr.first};
                    }
                }
                if (!feasible) continue;
                ++best.feasible_count;
                std::sort(selection.begin(), selection.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                double per = 0.0;
                for (int i = 0; i < n; ++i)
                    per += dist(selection[i].second, selection[(i + 1) % n].second);
                if (n == 1) per = 0.0;
                if (per < best.perimeter) {
                    best.perimeter = per;
                    best.selection = sel_bits;
                    best.cycle = ring_cycle(selection);
                }
            }
            // next subset in colexicographic order
            int t = 0;
            while (t < size && comb[t] + 1 == (t + 1 < size ? comb[t + 1] : n)) ++t;
            if (t == size) {
                more = false;
            } else {
                ++comb[t];
                for (int i = 0; i < t; ++i) comb[i] = i;
            }
        }
    }
    if (!std::isfinite(best.perimeter)) throw Error("no feasible candidate (unreachable)");
    return best;
}

}  // namespace sepcycle

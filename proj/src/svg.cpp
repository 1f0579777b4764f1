#include "sepcycle/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace sepcycle {

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* kRed = "#d62728";
const char* kBlue = "#1f77b4";
const char* kGray = "#666666";

}  // namespace

std::string render_svg(const GeomInstance& inst, const RenderOptions& opts) {
    // World bounding box over everything drawn.
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    auto extend = [&](double x, double y) {
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    };
    for (const auto& p : inst.points) extend(p.x, p.y);
    if (opts.cycle)
        for (const auto& p : opts.cycle->vertices) extend(p.x, p.y);
    if (opts.tube)
        for (const auto& p : opts.tube->mesh.vertices) extend(p.x, p.y);
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double margin = 0.05 * span;
    xmin -= margin;
    ymin -= margin;
    xmax += margin;
    ymax += margin;

    // SVG y grows downward; flip so the drawing matches the usual orientation.
    const double scale = 640.0 / span;
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return (ymax - y) * scale; };
    const double w = (xmax - xmin) * scale;
    const double h = (ymax - ymin) * scale;
    const double dot_r = 0.008 * span * scale;
    const double stroke = 0.0035 * span * scale;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w)
        << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Hyperedges: segments for pairs, hull outlines otherwise.
    for (const auto& e : inst.edges) {
        if (e.size() == 2) {
            const Point2 a = inst.pt2(e[0]);
            const Point2 b = inst.pt2(e[1]);
            out << "<line x1=\"" << fmt(X(a.x)) << "\" y1=\"" << fmt(Y(a.y)) << "\" x2=\""
                << fmt(X(b.x)) << "\" y2=\"" << fmt(Y(b.y)) << "\" stroke=\"" << kGray
                << "\" stroke-width=\"" << fmt(stroke) << "\"/>\n";
        } else {
            std::vector<Point2> pts;
            for (int v : e) pts.push_back(inst.pt2(v));
            std::vector<Point2> ring;
            try {
                ring = convex_hull(pts).vertices();
            } catch (const DegenerateInput&) {
                ring = pts;  // collinear hyperedge: draw the polyline
            }
            out << "<polygon points=\"";
            for (std::size_t i = 0; i < ring.size(); ++i) {
                if (i) out << " ";
                out << fmt(X(ring[i].x)) << "," << fmt(Y(ring[i].y));
            }
            out << "\" fill=\"none\" stroke=\"" << kGray << "\" stroke-width=\"" << fmt(stroke)
                << "\" stroke-dasharray=\"" << fmt(3.0 * stroke) << " " << fmt(2.0 * stroke)
                << "\"/>\n";
        }
    }

    // Tube projection: creased edges only.
    if (opts.tube) {
        const TriMesh& mesh = opts.tube->mesh;
        std::map<std::pair<int, int>, std::vector<int>> by_edge;
        for (int fi = 0; fi < static_cast<int>(mesh.faces.size()); ++fi)
            for (int k = 0; k < 3; ++k) {
                const auto key = std::minmax(mesh.faces[fi][k], mesh.faces[fi][(k + 1) % 3]);
                by_edge[{key.first, key.second}].push_back(fi);
            }
        auto face_normal = [&](int fi) {
            const auto& f = mesh.faces[fi];
            return normalized(cross(mesh.vertices[f[1]] - mesh.vertices[f[0]],
                                    mesh.vertices[f[2]] - mesh.vertices[f[0]]));
        };
        for (const auto& [edge, fs] : by_edge) {
            if (fs.size() != 2) continue;
            if (dot(face_normal(fs[0]), face_normal(fs[1])) >= 1.0 - 1e-7) continue;
            const Point3& a = mesh.vertices[edge.first];
            const Point3& b = mesh.vertices[edge.second];
            out << "<line x1=\"" << fmt(X(a.x)) << "\" y1=\"" << fmt(Y(a.y)) << "\" x2=\""
                << fmt(X(b.x)) << "\" y2=\"" << fmt(Y(b.y)) << "\" stroke=\"#999999\""
                << " stroke-width=\"" << fmt(0.6 * stroke) << "\"/>\n";
        }
    }

    // Solution cycle.
    if (opts.cycle && opts.cycle->vertices.size() >= 2) {
        out << "<polygon points=\"";
        for (std::size_t i = 0; i < opts.cycle->vertices.size(); ++i) {
            if (i) out << " ";
            out << fmt(X(opts.cycle->vertices[i].x)) << "," << fmt(Y(opts.cycle->vertices[i].y));
        }
        out << "\" fill=\"none\" stroke=\"" << kRed << "\" stroke-width=\"" << fmt(1.4 * stroke)
            << "\"/>\n";
    }

    // Points last so they sit on top.
    for (int i = 0; i < inst.num_points(); ++i) {
        const Point2 p = inst.pt2(i);
        const char* fill = "#444444";
        if (opts.coloring && i < static_cast<int>(opts.coloring->color.size()))
            fill = opts.coloring->color[i] == VColor::Red ? kRed : kBlue;
        else if (inst.colors)
            fill = (*inst.colors)[i] == VColor::Red ? kRed : kBlue;
        out << "<circle cx=\"" << fmt(X(p.x)) << "\" cy=\"" << fmt(Y(p.y)) << "\" r=\""
            << fmt(dot_r) << "\" fill=\"" << fill << "\"/>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace sepcycle

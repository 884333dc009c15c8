#include "gpq/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "gpq/error.h"

namespace gpq {

namespace {

struct Frame {
    double x0 = 0, y0 = 0, s = 1, h = 0;
    std::string pt(const Vec3& p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", 20 + (p.x() - x0) * s, 20 + h - (p.y() - y0) * s);
        return buf;
    }
};

const char* valence_colour(int val) {
    if (val <= 2) return "#d000d0";
    if (val == 3) return "#2ca02c";
    if (val == 4) return "#ffffff";
    if (val == 5) return "#ff7f0e";
    return "#d62728";
}

void check_flat(const std::vector<Vec3>& pts) {
    double scale = 1;
    for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    for (const auto& p : pts)
        if (std::abs(p.z()) > 1e-12 * scale) throw NotFlat("svg output needs a surface in the z = 0 plane");
}

void draw_map(const TriangleMesh& mesh, const GPMap& map, const Frame& f, std::ostream& out) {
    for (int t = 0; t < mesh.ntris(); t++) {
        const int s = jacobian_sign(map, t);
        const auto& tr = mesh.triangles[t];
        out << "<polygon class=\"tri" << (s < 0 ? " reverted" : s == 0 ? " degenerate" : "") << "\" points=\""
            << f.pt(mesh.vertices[tr[0]]) << ' ' << f.pt(mesh.vertices[tr[1]]) << ' ' << f.pt(mesh.vertices[tr[2]])
            << "\" fill=\"" << (s < 0 ? "#a05ac8" : s == 0 ? "#bbbbbb" : "#f4f4ef") << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
    }
    for (int coord = 0; coord < 2; coord++) {
        out << "<path class=\"iso-" << (coord == 0 ? 'u' : 'v') << "\" fill=\"none\" stroke=\""
            << (coord == 0 ? "#d62728" : "#1f77b4") << "\" stroke-width=\"1.2\" d=\"";
        for (int t = 0; t < mesh.ntris(); t++) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (int i = 0; i < 3; i++) lo = std::min(lo, map.uv[3 * t + i][coord]), hi = std::max(hi, map.uv[3 * t + i][coord]);
            for (int k = static_cast<int>(std::ceil(lo)); k <= static_cast<int>(std::floor(hi)); k++) {
                std::vector<Vec3> ends;
                for (int i = 0; i < 3; i++) {
                    const double a = map.uv[3 * t + i][coord] - k, b = map.uv[3 * t + (i + 1) % 3][coord] - k;
                    if (!((a < 0 && b > 0) || (a > 0 && b < 0))) continue;
                    const double s = a / (a - b);
                    const Vec3& pa = mesh.vertices[mesh.triangles[t][i]];
                    const Vec3& pb = mesh.vertices[mesh.triangles[t][(i + 1) % 3]];
                    ends.push_back(pa + s * (pb - pa));
                }
                if (ends.size() == 2) out << 'M' << f.pt(ends[0]) << 'L' << f.pt(ends[1]);
            }
        }
        out << "\"/>\n";
    }
}

void draw_graph(const TriangleMesh& mesh, const DualGraph& g, const Frame& f, double side, std::ostream& out) {
    std::vector<Vec3> at(g.nnodes(), Vec3::Zero());
    for (int n = 0; n < g.nnodes(); n++)
        if (g.nodes[n].alive) at[n] = mesh.point(g.nodes[n].tri, g.nodes[n].bary);
    out << "<path class=\"links\" fill=\"none\" stroke=\"#555555\" stroke-width=\"0.8\" d=\"";
    for (int p = 0; p < g.nports(); p++) {
        const int q = g.opposite[p];
        if (q > p) out << 'M' << f.pt(at[node_of(p)]) << 'L' << f.pt(at[node_of(q)]);
    }
    out << "\"/>\n";
    char buf[160];
    for (int n = 0; n < g.nnodes(); n++) {
        if (!g.nodes[n].alive) continue;
        const bool rev = g.nodes[n].reverted;
        const std::string c = f.pt(at[n]);
        double x = 0, y = 0;
        std::sscanf(c.c_str(), "%lf,%lf", &x, &y);
        std::snprintf(buf, sizeof buf, "<rect class=\"node %s\" x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n",
                      rev ? "reverted" : "normal", x - side / 2, y - side / 2, side, side, rev ? "#7030a0" : "#2ca02c");
        out << buf;
    }
}

void draw_quads(const QuadMesh& qm, const Frame& f, double radius, std::ostream& out) {
    for (const auto& q : qm.quads) {
        out << "<polygon class=\"quad\" points=\"";
        for (int i = 0; i < 4; i++) out << (i ? " " : "") << f.pt(qm.vertices[q[i]]);
        out << "\" fill=\"#e8eef8\" stroke=\"#203060\" stroke-width=\"1\"/>\n";
    }
    char buf[160];
    for (int v = 0; v < qm.nverts(); v++) {
        const std::string c = f.pt(qm.vertices[v]);
        double x = 0, y = 0;
        std::sscanf(c.c_str(), "%lf,%lf", &x, &y);
        std::snprintf(buf, sizeof buf, "<circle class=\"vertex v%d\" cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"%s\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n",
                      qm.valence[v], x, y, radius, valence_colour(qm.valence[v]));
        out << buf;
    }
}

}  // namespace

void render_svg(SvgStage stage, const SvgScene& scene, std::ostream& out) {
    const bool needs_mesh = stage != SvgStage::QuadMesh;
    if (needs_mesh && (!scene.mesh || !scene.map)) throw InvalidParameter("svg stage needs the triangle mesh and map");
    if ((stage == SvgStage::DualGraph || stage == SvgStage::Segmentation) && !scene.graph)
        throw InvalidParameter("svg stage needs the dual graph");
    if (stage == SvgStage::QuadMesh && !scene.quads) throw InvalidParameter("svg stage needs the quad mesh");

    const std::vector<Vec3>& pts = needs_mesh ? scene.mesh->vertices : scene.quads->vertices;
    check_flat(pts);
    Vec3 lo = Vec3::Zero(), hi = Vec3::Zero();
    if (!pts.empty()) {
        lo = hi = pts[0];
        for (const auto& p : pts) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
    }
    const double extent = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
    Frame f{lo.x(), lo.y(), 760.0 / extent, (hi.y() - lo.y()) * 760.0 / extent};
    const double w = (hi.x() - lo.x()) * f.s + 40, h = f.h + 40;

    char head[200];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n", w, h, w, h);
    out << head << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    const double unit = std::sqrt(pts.empty() ? 1.0 : (extent * extent) / std::max<size_t>(1, pts.size())) * f.s;
    switch (stage) {
        case SvgStage::Map: draw_map(*scene.mesh, *scene.map, f, out); break;
        case SvgStage::DualGraph: draw_graph(*scene.mesh, *scene.graph, f, std::clamp(unit, 3.0, 12.0), out); break;
        case SvgStage::Segmentation:
            draw_map(*scene.mesh, *scene.map, f, out);
            draw_graph(*scene.mesh, *scene.graph, f, std::clamp(unit, 3.0, 12.0), out);
            break;
        case SvgStage::QuadMesh: draw_quads(*scene.quads, f, std::clamp(unit / 3, 2.0, 6.0), out); break;
    }
    out << "</svg>\n";
}

void render_svg(SvgStage stage, const SvgScene& scene, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot write " + path);
    render_svg(stage, scene, f);
}

SvgStage parse_svg_stage(const std::string& name) {
    if (name == "map") return SvgStage::Map;
    if (name == "dual-graph") return SvgStage::DualGraph;
    if (name == "segmentation") return SvgStage::Segmentation;
    if (name == "quad-mesh") return SvgStage::QuadMesh;
    throw InvalidParameter("unknown svg stage '" + name + "'");
}

std::string svg_stage_name(SvgStage stage) {
    switch (stage) {
        case SvgStage::Map: return "map";
        case SvgStage::DualGraph: return "dual-graph";
        case SvgStage::Segmentation: return "segmentation";
        case SvgStage::QuadMesh: return "quad-mesh";
    }
    return "";
}

}  // namespace gpq

#include "gpq/sanitize.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gpq/error.h"

namespace gpq {

namespace {

bool near_int(double x, double eps) { return std::abs(x - std::round(x)) <= eps; }

bool passes_grid_point(const Vec2& a, const Vec2& b, double eps) {
    for (int c = 0; c < 2; c++) {
        const int o = 1 - c;
        const double lo = std::min(a[c], b[c]), hi = std::max(a[c], b[c]);
        for (double m = std::floor(lo) + 1; m < hi; m += 1) {
            if (m - lo <= eps || hi - m <= eps) continue;
            const double s = (m - a[c]) / (b[c] - a[c]);
            if (near_int(a[o] + s * (b[o] - a[o]), eps)) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Violation> detect_violations(const TriangleMesh& mesh, const GPMap& map, double eps) {
    std::vector<Violation> out;
    std::vector<bool> vertex_flag(mesh.nverts(), false);
    for (int c = 0; c < mesh.ncorners(); c++) {
        const Vec2& p = map.uv[c];
        if (near_int(p.x(), eps) || near_int(p.y(), eps)) vertex_flag[mesh.vert(c)] = true;
    }
    for (int e = 0; e < mesh.ncorners(); e++) {
        const int o = mesh.opposite(e);
        if (o != kBoundary && o < e) continue;
        const Vec2& a = map.uv[e];
        const Vec2& b = map.uv[next_corner(e)];
        bool on_iso = false;
        for (int c = 0; c < 2; c++)
            if (near_int(a[c], eps) && near_int(b[c], eps) && std::round(a[c]) == std::round(b[c])) on_iso = true;
        if (on_iso) out.push_back({ViolationKind::EdgeOnIso, e, -1});
        else if (passes_grid_point(a, b, eps)) out.push_back({ViolationKind::EdgeThroughGridPoint, e, -1});
    }
    for (int v = 0; v < mesh.nverts(); v++)
        if (vertex_flag[v]) out.push_back({ViolationKind::VertexOnIso, -1, v});
    return out;
}

std::vector<bool> fixed_vertices(const TriangleMesh& mesh, const GPMap& map) {
    const auto tr = compute_transitions(mesh, map);
    std::vector<bool> fixed(mesh.nverts(), false);
    for (int v = 0; v < mesh.nverts(); v++)
        if (mesh.vertex_corner()[v] >= 0) fixed[v] = vertex_holonomy(mesh, tr, v) != 0;
    return fixed;
}

Sanitized sanitize(const TriangleMesh& mesh_in, const GPMap& map_in, const SanitizeConfig& config) {
    if (!(config.perturbation_norm > 0)) throw InvalidParameter("perturbation norm must be positive");
    Sanitized out{mesh_in, map_in, 0, {}, 0};
    TriangleMesh& mesh = out.mesh;
    GPMap& map = out.map;
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);

    for (;;) {
        auto violations = detect_violations(mesh, map, config.grid_eps);
        if (violations.empty()) break;
        if (out.rounds_used == config.max_rounds)
            throw SanitizeFailed("violations remain after " + std::to_string(config.max_rounds) + " rounds");
        out.rounds_used++;

        auto fixed = fixed_vertices(mesh, map);
        std::set<VertexRef> to_move;
        std::vector<EdgeRef> to_split;
        for (const auto& v : violations) {
            if (v.kind == ViolationKind::VertexOnIso) {
                if (!fixed[v.vertex]) to_move.insert(v.vertex);
                continue;
            }
            const int a = mesh.from(v.edge), b = mesh.to(v.edge);
            if (fixed[a] && fixed[b]) to_split.push_back(v.edge);
            if (!fixed[a]) to_move.insert(a);
            if (!fixed[b]) to_move.insert(b);
        }
        if (to_move.empty() && to_split.empty())
            throw SanitizeFailed("violations only involve singular vertices");

        // a split rewrites the slots of its two triangles; one split per triangle per round
        std::set<int> touched;
        for (EdgeRef e : to_split) {
            const int o = mesh.opposite(e);
            if (touched.count(tri_of(e)) || (o != kBoundary && touched.count(tri_of(o)))) continue;
            touched.insert(tri_of(e));
            if (o != kBoundary) touched.insert(tri_of(o));
            split_edge(mesh, map, e, 0.5);
            out.splits++;
        }
        const auto tr = compute_transitions(mesh, map);
        for (VertexRef v : to_move) {
            const double th = angle(rng);
            Vec2 d = config.perturbation_norm * Vec2(std::cos(th), std::sin(th));
            for (int c : mesh.vertex_fan(v)) {
                map.uv[c] += d;
                // the next fan corner lives across prev_corner(c)
                d = rot(-tr[prev_corner(c)].k, d);
            }
            out.perturbed.push_back(v);
        }
    }
    return out;
}

}  // namespace gpq

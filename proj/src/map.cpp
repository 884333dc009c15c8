#include "gpq/map.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "gpq/error.h"

namespace gpq {

double GPMap::bbox_diagonal() const {
    if (uv.empty()) return 0;
    Vec2 lo = uv[0], hi = uv[0];
    for (const auto& p : uv) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

TransitionFit fit_transition(const std::array<Vec2, 2>& fi, const std::array<Vec2, 2>& fj) {
    TransitionFit best;
    best.residual = std::numeric_limits<double>::infinity();
    const double scale = 1 + std::max({fi[0].norm(), fi[1].norm(), fj[0].norm(), fj[1].norm()});
    for (int k = 0; k < 4; k++) {
        Vec2 d0 = fi[0] - rot(k, fj[0]);
        Vec2 d1 = fi[1] - rot(k, fj[1]);
        Vec2 T = 0.5 * (d0 + d1);
        double r = std::max((d0 - T).norm(), (d1 - T).norm());
        // ties (collapsed edges) keep the smallest k
        if (r < best.residual - 1e-12 * scale) {
            best.k = k;
            best.T_raw = T;
            best.residual = r;
        }
    }
    best.T = Vec2i(static_cast<int>(std::lround(best.T_raw.x())), static_cast<int>(std::lround(best.T_raw.y())));
    return best;
}

TransitionFit edge_transition(const TriangleMesh& mesh, const GPMap& map, EdgeRef e) {
    const EdgeRef o = mesh.opposite(e);
    if (o == kBoundary) return {};
    // e goes A->B in tri(e); o goes B->A in tri(o)
    std::array<Vec2, 2> fi{map.uv[e], map.uv[next_corner(e)]};
    std::array<Vec2, 2> fj{map.uv[next_corner(o)], map.uv[o]};
    return fit_transition(fi, fj);
}

std::vector<Transition> compute_transitions(const TriangleMesh& mesh, const GPMap& map) {
    std::vector<Transition> out(mesh.ncorners());
    for (int e = 0; e < mesh.ncorners(); e++)
        if (!mesh.is_boundary(e)) out[e] = edge_transition(mesh, map, e).snapped();
    return out;
}

double uv_det(const GPMap& map, int tri) {
    const Vec2& a = map.uv[3 * tri];
    const Vec2 u = map.uv[3 * tri + 1] - a;
    const Vec2 v = map.uv[3 * tri + 2] - a;
    return u.x() * v.y() - u.y() * v.x();
}

int jacobian_sign(const GPMap& map, int tri) {
    const Vec2& a = map.uv[3 * tri];
    const Vec2& b = map.uv[3 * tri + 1];
    const Vec2& c = map.uv[3 * tri + 2];
    const double scale2 = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    const double det = uv_det(map, tri);
    if (scale2 == 0 || std::abs(det) <= map.tol.det * scale2) return 0;
    return det > 0 ? 1 : -1;
}

SingularityRecord vertex_index(const TriangleMesh& mesh, const GPMap& map, VertexRef v) {
    bool closed = false;
    auto fan = mesh.vertex_fan(v, &closed);
    if (!closed) throw InvalidParameter("vertex_index on boundary vertex " + std::to_string(v));
    SingularityRecord rec;
    rec.vertex = v;
    for (int c : fan) {
        int s = jacobian_sign(map, tri_of(c));
        if (s == 0) throw UndefinedIndex("degenerate triangle around vertex " + std::to_string(v));
        Vec2 a = map.uv[next_corner(c)] - map.uv[c];
        Vec2 b = map.uv[prev_corner(c)] - map.uv[c];
        double ang = std::atan2(std::abs(a.x() * b.y() - a.y() * b.x()), a.dot(b));
        rec.angle_sum += s * ang;
    }
    const double two_pi = 2 * std::numbers::pi;
    const double raw = (two_pi - rec.angle_sum) / two_pi;
    rec.quarters = static_cast<int>(std::lround(4 * raw));
    if (std::abs(raw - rec.quarters / 4.0) > map.tol.index)
        throw UndefinedIndex("angle sum at vertex " + std::to_string(v) + " is not a quarter turn multiple");
    return rec;
}

int vertex_holonomy(const TriangleMesh& mesh, const std::vector<Transition>& transitions, VertexRef v) {
    bool closed = false;
    auto fan = mesh.vertex_fan(v, &closed);
    if (!closed) return 0;
    int k = 0;
    for (int c : fan) k += transitions[prev_corner(c)].k;
    return k % 4;
}

MapReport validate(const TriangleMesh& mesh, const GPMap& map) {
    MapReport rep;
    const double diag = map.bbox_diagonal();
    rep.seamless_tolerance = map.tol.seam_rel * (diag > 0 ? diag : 1.0);
    for (int e = 0; e < mesh.ncorners(); e++) {
        const int o = mesh.opposite(e);
        if (o == kBoundary || o < e) continue;
        auto fit = edge_transition(mesh, map, e);
        rep.max_seamless_residual = std::max(rep.max_seamless_residual, fit.residual);
        if (fit.residual > rep.seamless_tolerance) rep.seamless_violations.push_back({e, fit.residual});
        if ((fit.T_raw - fit.T.cast<double>()).cwiseAbs().maxCoeff() > map.tol.integer) rep.non_integer_edges.push_back(e);
    }
    for (int t = 0; t < mesh.ntris(); t++) {
        int s = jacobian_sign(map, t);
        if (s < 0) rep.reverted.push_back(t);
        if (s == 0) rep.degenerate.push_back(t);
    }
    for (int v = 0; v < mesh.nverts(); v++) {
        if (mesh.vertex_corner()[v] < 0 || mesh.is_boundary_vertex(v)) continue;
        SingularityRecord rec;
        try {
            rec = vertex_index(mesh, map, v);
        } catch (const UndefinedIndex&) {
            rep.undefined_index.push_back(v);
            continue;
        }
        if (rec.quarters == 0) continue;
        rep.singularities.push_back(rec);
        const Vec2& p = map.uv[mesh.vertex_corner()[v]];
        if (std::abs(p.x() - std::round(p.x())) > map.tol.integer || std::abs(p.y() - std::round(p.y())) > map.tol.integer)
            rep.sog_violations.push_back(v);
    }
    return rep;
}

GPMap shift_map(const TriangleMesh& mesh, const GPMap& map, const Vec2& delta) {
    const auto tr = compute_transitions(mesh, map);
    std::vector<Vec2> d(mesh.ntris());
    std::vector<bool> seen(mesh.ntris(), false);
    for (int root = 0; root < mesh.ntris(); root++) {
        if (seen[root]) continue;
        seen[root] = true;
        d[root] = delta;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            for (int i = 0; i < 3; i++) {
                const int e = 3 * t + i;
                const int o = mesh.opposite(e);
                if (o == kBoundary || seen[tri_of(o)]) continue;
                // F_t = R^k F_n + T, so a chart offset d_t reads R^-k d_t in the neighbour
                seen[tri_of(o)] = true;
                d[tri_of(o)] = rot(-tr[e].k, d[t]);
                queue.push_back(tri_of(o));
            }
        }
    }
    GPMap out = map;
    for (int c = 0; c < mesh.ncorners(); c++) out.uv[c] += d[tri_of(c)];
    return out;
}

VertexRef split_edge(TriangleMesh& mesh, GPMap& map, EdgeRef e, double t) {
    const int o = mesh.opposite(e);
    const Vec2 a = map.uv[e], b = map.uv[next_corner(e)], c = map.uv[prev_corner(e)];
    Vec2 oa, ob, od;
    if (o != kBoundary) {
        ob = map.uv[o];
        oa = map.uv[next_corner(o)];
        od = map.uv[prev_corner(o)];
    }
    const EdgeSplit s = split_edge(mesh, e, t);
    map.uv.resize(mesh.ncorners());
    const Vec2 m = (1 - t) * a + t * b;
    map.uv[3 * s.tri + (s.slot + 1) % 3] = m;
    map.uv[3 * s.new_tri + 0] = m;
    map.uv[3 * s.new_tri + 1] = b;
    map.uv[3 * s.new_tri + 2] = c;
    if (s.opp_tri >= 0) {
        const Vec2 om = (1 - t) * oa + t * ob;
        map.uv[3 * s.opp_tri + (s.opp_slot + 1) % 3] = om;
        map.uv[3 * s.opp_new_tri + 0] = om;
        map.uv[3 * s.opp_new_tri + 1] = oa;
        map.uv[3 * s.opp_new_tri + 2] = od;
    }
    return s.vertex;
}

Vec2 vertex_uv_in(const TriangleMesh& mesh, const GPMap& map, int tri, VertexRef v) {
    for (int i = 0; i < 3; i++)
        if (mesh.triangles[tri][i] == v) return map.uv[3 * tri + i];
    throw InvalidParameter("vertex not in triangle");
}

}  // namespace gpq

#include "gpq/extract.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "gpq/error.h"

namespace gpq {

int QuadMesh::boundary_edges() const { return static_cast<int>(std::count(edge_opp.begin(), edge_opp.end(), -1)); }

int QuadMesh::fallback_count() const {
    return static_cast<int>(std::count(placed_exactly.begin(), placed_exactly.end(), false));
}

std::map<int, int> QuadMesh::interior_valence_histogram() const {
    std::map<int, int> h;
    for (int v = 0; v < nverts(); v++)
        if (!boundary[v]) h[valence[v]]++;
    return h;
}

QuadMesh assemble(const DualGraph& g) {
    const auto vc = vertex_classes(g);
    QuadMesh qm;
    qm.vertices.assign(vc.count(), Vec3::Zero());
    qm.placed_exactly.assign(vc.count(), false);
    qm.boundary = vc.boundary;
    for (int k = 0; k < vc.count(); k++) {
        qm.valence.push_back(vc.valence(k));
        if (!vc.boundary[k] && vc.corners[k] <= 2)
            qm.warnings.push_back("DegenerateOrbit: vertex " + std::to_string(k) + " has valence " +
                                  std::to_string(vc.corners[k]));
    }
    std::vector<int> quad_of(g.nnodes(), -1);
    for (int n = 0; n < g.nnodes(); n++) {
        if (!g.nodes[n].alive) continue;
        quad_of[n] = qm.nquads();
        qm.quads.push_back({vc.of_corner[corner_of(n, 0)], vc.of_corner[corner_of(n, 1)], vc.of_corner[corner_of(n, 2)],
                            vc.of_corner[corner_of(n, 3)]});
        qm.quad_node.push_back(n);
    }
    // slot j of a quad lies between corners j and j+1, i.e. on port j+1
    qm.edge_opp.assign(4 * qm.nquads(), -1);
    for (int f = 0; f < qm.nquads(); f++) {
        const int n = qm.quad_node[f];
        for (int j = 0; j < 4; j++) {
            const int q = g.opposite[port_of(n, j + 1)];
            if (q >= 0) qm.edge_opp[4 * f + j] = 4 * quad_of[node_of(q)] + (dir_of(q) + 3) % 4;
        }
    }
    return qm;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Parameter interval of P + s D, s in [0,1], inside the counter-clockwise triangle.
bool clip(const std::array<Vec2, 3>& t, const Vec2& P, const Vec2& D, double& s0, double& s1) {
    s0 = 0, s1 = 1;
    for (int i = 0; i < 3; i++) {
        const Vec2 e = t[(i + 1) % 3] - t[i];
        const double eps = 1e-12 * e.norm() * (1 + D.norm() + (P - t[i]).norm());
        const double f0 = cross2(e, P - t[i]) + eps;
        const double df = cross2(e, D);
        if (df == 0) {
            if (f0 < 0) return false;
            continue;
        }
        const double s = -f0 / df;
        if (df > 0) s0 = std::max(s0, s);
        else s1 = std::min(s1, s);
        if (s0 > s1) return false;
    }
    return true;
}

Vec3 surface_point(const TriangleMesh& mesh, int tri, const std::array<Vec2, 3>& t, const Vec2& x) {
    const double det = cross2(t[1] - t[0], t[2] - t[0]);
    Vec3 l(cross2(t[1] - x, t[2] - x) / det, cross2(t[2] - x, t[0] - x) / det, 0);
    l.x() = std::clamp(l.x(), 0.0, 1.0);
    l.y() = std::clamp(l.y(), 0.0, 1.0 - l.x());
    l.z() = 1 - l.x() - l.y();
    return mesh.point(tri, l);
}

struct CornerTrace {
    bool exact = false;
    Vec3 pos = Vec3::Zero();
    double remaining = std::numeric_limits<double>::infinity();  // map distance to the target
};

CornerTrace trace_diagonal(const TriangleMesh& mesh, const GPMap& map, const std::vector<Transition>& transitions,
                           const DualNode& node, int d) {
    static const Vec2 offs[4] = {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}};
    const Vec2 P = node.grid.cast<double>();
    const Vec2 Q = P + offs[d];
    CornerTrace best;
    std::vector<char> seen(mesh.ntris(), 0);
    std::deque<std::pair<int, Transition>> queue{{node.tri, Transition{}}};
    seen[node.tri] = 1;
    while (!queue.empty()) {
        auto [t, tr] = queue.front();
        queue.pop_front();
        if (jacobian_sign(map, t) <= 0) continue;
        const std::array<Vec2, 3> tri{map.uv[3 * t], map.uv[3 * t + 1], map.uv[3 * t + 2]};
        const Vec2 p = tr.apply(P), D = tr.apply_vector(Q - P);
        double s0, s1;
        if (!clip(tri, p, D, s0, s1)) continue;
        const double rem = (1 - s1) * D.norm();
        if (rem < best.remaining) {
            best.remaining = rem;
            best.pos = surface_point(mesh, t, tri, p + s1 * D);
        }
        if (s1 >= 1 - 1e-12) {
            best.exact = true;
            best.remaining = 0;
            return best;
        }
        for (int e = 0; e < 3; e++) {
            const int o = mesh.opposite(3 * t + e);
            if (o == kBoundary || seen[tri_of(o)]) continue;
            seen[tri_of(o)] = 1;
            queue.push_back({tri_of(o), transitions[o].compose(tr)});
        }
    }
    return best;
}

}  // namespace

void place_vertices(const DualGraph& g, QuadMesh& qm, const TriangleMesh& mesh, const GPMap& map,
                    PlacementStats* stats) {
    const auto transitions = compute_transitions(mesh, map);
    std::vector<std::vector<CornerTrace>> per_vertex(qm.nverts());
    for (int f = 0; f < qm.nquads(); f++) {
        const DualNode& node = g.nodes[qm.quad_node[f]];
        for (int d = 0; d < 4; d++) per_vertex[qm.quads[f][d]].push_back(trace_diagonal(mesh, map, transitions, node, d));
    }

    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
    for (const auto& v : mesh.vertices) lo = lo.cwiseMin(v), hi = hi.cwiseMax(v);
    const double agree_tol = 1e-6 * (mesh.nverts() ? (hi - lo).norm() : 1.0);

    PlacementStats st;
    for (int v = 0; v < qm.nverts(); v++) {
        const auto& cs = per_vertex[v];
        Vec3 sum = Vec3::Zero();
        int nexact = 0;
        for (const auto& c : cs)
            if (c.exact) sum += c.pos, nexact++;
        if (nexact > 0) {
            const Vec3 avg = sum / nexact;
            bool agree = true;
            for (const auto& c : cs)
                if (c.exact && (c.pos - avg).norm() > agree_tol) agree = false;
            qm.vertices[v] = avg;
            qm.placed_exactly[v] = agree;
            if (agree) st.exact++;
            else st.disagreeing++, st.fallback++;
            continue;
        }
        const CornerTrace* best = nullptr;
        for (const auto& c : cs)
            if (!best || c.remaining < best->remaining) best = &c;
        if (best) qm.vertices[v] = best->pos;
        qm.placed_exactly[v] = false;
        st.fallback++;
    }
    if (stats) *stats = st;
}

void build_quad_adjacency(QuadMesh& qm) {
    std::map<std::pair<int, int>, int> slot;
    for (int f = 0; f < qm.nquads(); f++) {
        for (int j = 0; j < 4; j++) {
            const int a = qm.quads[f][j], b = qm.quads[f][(j + 1) % 4];
            if (a == b) throw PreconditionFailed("quad " + std::to_string(f) + " repeats a vertex");
            if (!slot.emplace(std::pair{a, b}, 4 * f + j).second)
                throw PreconditionFailed("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") used twice");
        }
    }
    qm.edge_opp.assign(4 * qm.nquads(), -1);
    std::vector<int> corners(qm.nverts(), 0);
    qm.boundary.assign(qm.nverts(), false);
    for (const auto& [key, s] : slot) {
        corners[key.first]++;
        auto it = slot.find({key.second, key.first});
        if (it != slot.end()) qm.edge_opp[s] = it->second;
        else qm.boundary[key.first] = qm.boundary[key.second] = true;
    }
    qm.valence.resize(qm.nverts());
    for (int v = 0; v < qm.nverts(); v++) qm.valence[v] = corners[v] + (qm.boundary[v] ? 1 : 0);
    if (qm.placed_exactly.size() != qm.vertices.size()) qm.placed_exactly.assign(qm.nverts(), true);
    if (qm.quad_node.size() != qm.quads.size()) qm.quad_node.assign(qm.nquads(), -1);
}

namespace {

// Grows a correspondence from quad sa of a to quad sb of b, slot j of a <-> slot j+r of b.
bool propagate(const QuadMesh& a, const QuadMesh& b, int sa, int sb, int r, std::vector<int>& qmap,
               std::vector<int>& qrot, std::vector<int>& vmap, std::vector<int>& vinv, std::vector<char>& bused) {
    std::deque<std::array<int, 3>> queue;
    auto claim = [&](int qa, int qb, int rr) {
        if (qmap[qa] >= 0) return qmap[qa] == qb && qrot[qa] == rr;
        if (bused[qb]) return false;
        qmap[qa] = qb, qrot[qa] = rr, bused[qb] = 1;
        queue.push_back({qa, qb, rr});
        return true;
    };
    if (!claim(sa, sb, r)) return false;
    while (!queue.empty()) {
        const auto [qa, qb, rr] = queue.front();
        queue.pop_front();
        for (int j = 0; j < 4; j++) {
            const int jb = (j + rr) % 4;
            const int va = a.quads[qa][j], vb = b.quads[qb][jb];
            if (a.valence[va] != b.valence[vb]) return false;
            if (vmap[va] < 0 && vinv[vb] < 0) vmap[va] = vb, vinv[vb] = va;
            else if (vmap[va] != vb || vinv[vb] != va) return false;
            const int oa = a.edge_opp[4 * qa + j], ob = b.edge_opp[4 * qb + jb];
            if ((oa < 0) != (ob < 0)) return false;
            if (oa < 0) continue;
            if (!claim(oa / 4, ob / 4, ((ob % 4 - oa % 4) % 4 + 4) % 4)) return false;
        }
    }
    return true;
}

}  // namespace

bool isomorphic(const QuadMesh& a, const QuadMesh& b, std::vector<int>* vertex_map) {
    if (a.nquads() != b.nquads() || a.nverts() != b.nverts() || a.boundary_edges() != b.boundary_edges()) return false;
    std::vector<int> qmap(a.nquads(), -1), qrot(a.nquads(), 0), vmap(a.nverts(), -1), vinv(b.nverts(), -1);
    std::vector<char> bused(b.nquads(), 0);
    for (int sa = 0; sa < a.nquads(); sa++) {
        if (qmap[sa] >= 0) continue;
        bool found = false;
        for (int sb = 0; sb < b.nquads() && !found; sb++) {
            if (bused[sb]) continue;
            for (int r = 0; r < 4 && !found; r++) {
                auto q2 = qmap, r2 = qrot, v2 = vmap, i2 = vinv;
                auto u2 = bused;
                if (propagate(a, b, sa, sb, r, q2, r2, v2, i2, u2)) {
                    qmap.swap(q2), qrot.swap(r2), vmap.swap(v2), vinv.swap(i2), bused.swap(u2);
                    found = true;
                }
            }
        }
        if (!found) return false;
    }
    if (std::find(vmap.begin(), vmap.end(), -1) != vmap.end()) return false;
    if (vertex_map) *vertex_map = vmap;
    return true;
}

}  // namespace gpq

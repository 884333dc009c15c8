#include "gpq/dual_graph.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpq/error.h"

namespace gpq {

int DualGraph::alive_count() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const DualNode& n) { return n.alive; }));
}

int DualGraph::add_node(const DualNode& n) {
    nodes.push_back(n);
    opposite.insert(opposite.end(), 4, -1);
    return nnodes() - 1;
}

void DualGraph::link(int p, int q) {
    if (opposite[p] >= 0) opposite[opposite[p]] = -1;
    if (opposite[q] >= 0) opposite[opposite[q]] = -1;
    opposite[p] = q;
    opposite[q] = p;
}

void DualGraph::unlink(int p) {
    if (opposite[p] >= 0) opposite[opposite[p]] = -1;
    opposite[p] = -1;
}

void DualGraph::remove_node(int node) {
    for (int d = 0; d < 4; d++) unlink(port_of(node, d));
    nodes[node].alive = false;
}

bool DualGraph::check_involution() const {
    if (static_cast<int>(opposite.size()) != nports()) return false;
    for (int p = 0; p < nports(); p++) {
        const int q = opposite[p];
        if (q < 0) continue;
        if (q >= nports() || q == p || opposite[q] != p) return false;
        if (!nodes[node_of(p)].alive || !nodes[node_of(q)].alive) return false;
    }
    return true;
}

int DualGraph::matched_pairs() const {
    int n = 0;
    for (int p = 0; p < nports(); p++)
        if (opposite[p] > p) n++;
    return n;
}

int DualGraph::unmatched_ports() const {
    int n = 0;
    for (int p = 0; p < nports(); p++)
        if (nodes[node_of(p)].alive && opposite[p] < 0) n++;
    return n;
}

std::vector<DualNode> find_nodes(const TriangleMesh& mesh, const GPMap& map) {
    std::vector<DualNode> out;
    for (int t = 0; t < mesh.ntris(); t++) {
        const int sign = jacobian_sign(map, t);
        if (sign == 0) continue;
        const Vec2& a = map.uv[3 * t];
        const Vec2& b = map.uv[3 * t + 1];
        const Vec2& c = map.uv[3 * t + 2];
        const double det = uv_det(map, t);
        const Vec2 lo = a.cwiseMin(b).cwiseMin(c), hi = a.cwiseMax(b).cwiseMax(c);
        for (int i = static_cast<int>(std::ceil(lo.x())); i <= static_cast<int>(std::floor(hi.x())); i++) {
            for (int j = static_cast<int>(std::ceil(lo.y())); j <= static_cast<int>(std::floor(hi.y())); j++) {
                const Vec2 p(i, j);
                auto cross = [](const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); };
                Vec3 l(cross(b - p, c - p) / det, cross(c - p, a - p) / det, cross(a - p, b - p) / det);
                if (l.minCoeff() < -1e-12) continue;
                if (l.minCoeff() <= 1e-12)
                    throw SanitizationBreach("grid point (" + std::to_string(i) + ", " + std::to_string(j) +
                                             ") on the boundary of triangle " + std::to_string(t));
                out.push_back({t, Vec2i(i, j), l, sign < 0, true});
            }
        }
    }
    return out;
}

IsoTracer::IsoTracer(const TriangleMesh& mesh, const GPMap& map, const std::vector<DualNode>& nodes)
    : mesh_(mesh), map_(map), nodes_(nodes), transitions_(compute_transitions(mesh, map)), per_tri_(mesh.ntris()) {
    for (int n = 0; n < static_cast<int>(nodes.size()); n++)
        if (nodes[n].alive) per_tri_[nodes[n].tri].push_back(n);
}

int IsoTracer::crossings(int tri, int coord, int value, Crossing out[3]) const {
    int count = 0;
    for (int e = 0; e < 3; e++) {
        const Vec2& p = map_.uv[3 * tri + e];
        const Vec2& q = map_.uv[3 * tri + (e + 1) % 3];
        const double fp = p[coord] - value, fq = q[coord] - value;
        if (!((fp < 0 && fq > 0) || (fp > 0 && fq < 0))) continue;
        const double s = fp / (fp - fq);
        out[count++] = {e, p[1 - coord] + s * (q[1 - coord] - p[1 - coord])};
    }
    return count;
}

TraceResult IsoTracer::trace(int port) const {
    TraceResult res;
    const DualNode& start = nodes_[node_of(port)];
    const int dir = dir_of(port);
    int axis = dir % 2;      // coordinate increasing along the travel
    int coord = 1 - axis;    // coordinate held constant on the iso
    int value = start.grid[coord];
    const int sign = dir < 2 ? 1 : -1;
    int tri = start.tri;

    Crossing cr[3];
    if (crossings(tri, coord, value, cr) != 2) return res;
    const double w0 = start.grid[axis];
    const int exit_idx = sign * (cr[0].w - w0) > 0 ? 0 : 1;
    if (!(sign * (cr[exit_idx].w - w0) > 0) || sign * (cr[1 - exit_idx].w - w0) > 0) return res;

    // first segment: from the start node toward the exit
    {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int m : per_tri_[tri]) {
            if (m == node_of(port) || nodes_[m].grid[coord] != value) continue;
            const double d = sign * (nodes_[m].grid[axis] - w0);
            if (d > 0 && d < best_d) best_d = d, best = m;
        }
        if (best >= 0) {
            res.status = TraceResult::Status::Reached;
            res.port = port_of(best, sign > 0 ? axis + 2 : axis);
            return res;
        }
    }
    int exit_edge = cr[exit_idx].edge;

    const int max_steps = 4 * mesh_.ntris() + 16;
    for (res.steps = 1; res.steps <= max_steps; res.steps++) {
        const EdgeRef h = 3 * tri + exit_edge;
        const EdgeRef o = mesh_.opposite(h);
        if (o == kBoundary) {
            res.status = TraceResult::Status::Boundary;
            return res;
        }
        const Transition& tr = transitions_[o];  // chart of tri -> chart of tri(o)
        Vec2i on_line = Vec2i::Zero();
        on_line[coord] = value;
        const int new_coord = tr.k % 2 ? 1 - coord : coord;
        value = tr.apply(on_line)[new_coord];
        coord = new_coord;
        axis = 1 - coord;
        tri = tri_of(o);

        const int n = crossings(tri, coord, value, cr);
        if (n != 2) return res;
        const int entry_idx = cr[0].edge == local_of(o) ? 0 : (cr[1].edge == local_of(o) ? 1 : -1);
        if (entry_idx < 0) return res;
        const double w_in = cr[entry_idx].w, w_out = cr[1 - entry_idx].w;

        int best = -1;
        double best_f = std::numeric_limits<double>::infinity();
        if (w_out != w_in) {
            for (int m : per_tri_[tri]) {
                if (nodes_[m].grid[coord] != value) continue;
                const double f = (nodes_[m].grid[axis] - w_in) / (w_out - w_in);
                if (f > 0 && f < 1 && f < best_f) best_f = f, best = m;
            }
        }
        if (best >= 0) {
            res.status = TraceResult::Status::Reached;
            res.port = port_of(best, w_out > w_in ? axis + 2 : axis);
            return res;
        }
        exit_edge = cr[1 - entry_idx].edge;
    }
    return res;
}

DualGraph link_ports(std::vector<DualNode> nodes, const TriangleMesh& mesh, const GPMap& map, LinkDiagnostics* diag) {
    DualGraph g;
    for (const auto& n : nodes) g.add_node(n);
    IsoTracer tracer(mesh, map, g.nodes);
    std::vector<TraceResult> res(g.nports());
    for (int p = 0; p < g.nports(); p++) res[p] = tracer.trace(p);
    LinkDiagnostics local;
    for (int p = 0; p < g.nports(); p++) {
        switch (res[p].status) {
            case TraceResult::Status::Boundary: local.boundary_ports++; break;
            case TraceResult::Status::Stall: local.stalled_ports.push_back(p); break;
            case TraceResult::Status::Reached: {
                const int q = res[p].port;
                if (q != p && res[q].status == TraceResult::Status::Reached && res[q].port == p) {
                    if (p < q) g.link(p, q);
                } else {
                    local.non_mutual_ports.push_back(p);
                }
                break;
            }
        }
    }
    if (diag) *diag = std::move(local);
    return g;
}

DualGraph build_dual_graph(const TriangleMesh& mesh, const GPMap& map, LinkDiagnostics* diag) {
    return link_ports(find_nodes(mesh, map), mesh, map, diag);
}

}  // namespace gpq

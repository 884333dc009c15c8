#include "gpq/mesh.h"

#include <algorithm>
#include <map>
#include <utility>

#include "gpq/error.h"

namespace gpq {

TriangleMesh::TriangleMesh(std::vector<Vec3> verts, std::vector<std::array<int, 3>> tris)
    : vertices(std::move(verts)), triangles(std::move(tris)) {
    for (const auto& t : triangles)
        for (int v : t)
            if (v < 0 || v >= nverts()) throw InvalidParameter("triangle references missing vertex " + std::to_string(v));
    build_adjacency();
}

void TriangleMesh::build_adjacency() {
    opp_.assign(ncorners(), kBoundary);
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int e = 0; e < ncorners(); e++) {
        int a = from(e), b = to(e);
        by_edge[{std::min(a, b), std::max(a, b)}].push_back(e);
    }
    for (const auto& [key, edges] : by_edge) {
        if (edges.size() > 2) throw NonManifold(key.first, key.second);
        if (edges.size() == 2) {
            if (from(edges[0]) == from(edges[1])) throw InconsistentOrientation(key.first, key.second);
            opp_[edges[0]] = edges[1];
            opp_[edges[1]] = edges[0];
        }
    }
    v2c_.assign(nverts(), -1);
    for (int c = 0; c < ncorners(); c++) {
        int v = vert(c);
        if (v2c_[v] == -1) v2c_[v] = c;
    }
    // boundary vertices start their fan at the boundary
    for (int c = 0; c < ncorners(); c++)
        if (opp_[c] == kBoundary) v2c_[vert(c)] = c;
}

void TriangleMesh::check_nondegenerate() const {
    for (int t = 0; t < ntris(); t++)
        if (triangle_area(t) <= 0) throw DegenerateTriangle(t);
}

int TriangleMesh::count_boundary_edges() const {
    return static_cast<int>(std::count(opp_.begin(), opp_.end(), kBoundary));
}

int TriangleMesh::count_undirected_edges() const {
    return (ncorners() + count_boundary_edges()) / 2;
}

int TriangleMesh::euler_characteristic() const {
    std::vector<bool> used(nverts(), false);
    for (const auto& t : triangles)
        for (int v : t) used[v] = true;
    int nv = static_cast<int>(std::count(used.begin(), used.end(), true));
    return nv - count_undirected_edges() + ntris();
}

CornerRef TriangleMesh::rotate(CornerRef c) const {
    int o = opp_[prev_corner(c)];
    return o == kBoundary ? kBoundary : o;
}

std::vector<CornerRef> TriangleMesh::vertex_fan(VertexRef v, bool* closed) const {
    std::vector<CornerRef> fan;
    int start = v2c_[v];
    if (start < 0) {
        if (closed) *closed = false;
        return fan;
    }
    int c = start;
    bool is_closed = true;
    do {
        fan.push_back(c);
        c = rotate(c);
        if (c == kBoundary) {
            is_closed = false;
            break;
        }
    } while (c != start && fan.size() <= static_cast<size_t>(ncorners()));
    if (closed) *closed = is_closed;
    return fan;
}

bool TriangleMesh::is_boundary_vertex(VertexRef v) const {
    int c = v2c_[v];
    return c >= 0 && opp_[c] == kBoundary;
}

double TriangleMesh::triangle_area(int t) const {
    const auto& tr = triangles[t];
    return 0.5 * (vertices[tr[1]] - vertices[tr[0]]).cross(vertices[tr[2]] - vertices[tr[0]]).norm();
}

Vec3 TriangleMesh::point(int t, const Vec3& bary) const {
    const auto& tr = triangles[t];
    return bary[0] * vertices[tr[0]] + bary[1] * vertices[tr[1]] + bary[2] * vertices[tr[2]];
}

EdgeSplit split_edge(TriangleMesh& mesh, EdgeRef e, double t) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidParameter("split parameter must lie in (0,1)");
    if (e < 0 || e >= mesh.ncorners()) throw InvalidParameter("invalid edge handle");

    EdgeSplit s;
    const int a = mesh.from(e), b = mesh.to(e);
    const int o = mesh.opposite(e);
    s.vertex = mesh.nverts();
    mesh.vertices.push_back((1 - t) * mesh.vertices[a] + t * mesh.vertices[b]);

    s.tri = tri_of(e);
    s.slot = local_of(e);
    const int c = mesh.triangles[s.tri][(s.slot + 2) % 3];
    mesh.triangles[s.tri][(s.slot + 1) % 3] = s.vertex;
    s.new_tri = mesh.ntris();
    mesh.triangles.push_back({s.vertex, b, c});

    if (o != kBoundary) {
        s.opp_tri = tri_of(o);
        s.opp_slot = local_of(o);
        const int d = mesh.triangles[s.opp_tri][(s.opp_slot + 2) % 3];
        mesh.triangles[s.opp_tri][(s.opp_slot + 1) % 3] = s.vertex;
        s.opp_new_tri = mesh.ntris();
        mesh.triangles.push_back({s.vertex, a, d});
    }
    mesh.build_adjacency();
    return s;
}

}  // namespace gpq

#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gpq {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec2i = Eigen::Vector2i;

// Handles are dense indices. A corner and the directed edge leaving it share
// the same id: corner 3*t+i sits at vertex tris[t][i] and the directed edge
// 3*t+i goes from that vertex to tris[t][(i+1)%3].
using CornerRef = int;
using EdgeRef = int;
using VertexRef = int;

inline constexpr int kBoundary = -1;

inline int tri_of(int corner) { return corner / 3; }
inline int local_of(int corner) { return corner % 3; }
inline int next_corner(int c) { return 3 * (c / 3) + (c % 3 + 1) % 3; }
inline int prev_corner(int c) { return 3 * (c / 3) + (c % 3 + 2) % 3; }

/// Oriented manifold triangle mesh with a directed-edge opposite table.
class TriangleMesh {
public:
    TriangleMesh() = default;
    TriangleMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

    int nverts() const { return static_cast<int>(vertices.size()); }
    int ntris() const { return static_cast<int>(triangles.size()); }
    int ncorners() const { return 3 * ntris(); }

    int vert(int corner) const { return triangles[tri_of(corner)][local_of(corner)]; }
    int from(EdgeRef e) const { return vert(e); }
    int to(EdgeRef e) const { return vert(next_corner(e)); }
    EdgeRef opposite(EdgeRef e) const { return opp_[e]; }
    bool is_boundary(EdgeRef e) const { return opp_[e] == kBoundary; }
    bool has_adjacency() const { return static_cast<int>(opp_.size()) == ncorners(); }

    /// Rebuilds the opposite table. Throws NonManifold or InconsistentOrientation.
    void build_adjacency();

    /// Throws DegenerateTriangle for the first zero-area triangle.
    void check_nondegenerate() const;

    int count_boundary_edges() const;
    int count_undirected_edges() const;
    int euler_characteristic() const;

    /// One corner per vertex (the first fan corner for boundary vertices).
    const std::vector<int>& vertex_corner() const { return v2c_; }

    /// Corners around vertex v, ordered by rotation. For a boundary vertex the
    /// fan starts at the corner whose outgoing edge is on the boundary.
    std::vector<CornerRef> vertex_fan(VertexRef v, bool* closed = nullptr) const;
    bool is_boundary_vertex(VertexRef v) const;

    /// Corner reached by rotating around the vertex of c across the edge entering c,
    /// or kBoundary.
    CornerRef rotate(CornerRef c) const;

    double triangle_area(int t) const;
    Vec3 point(int t, const Vec3& bary) const;

    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

private:
    std::vector<int> opp_;
    std::vector<int> v2c_;
};

/// Slots filled by split_edge. Triangles keep their index; the split triangle
/// keeps the original slot layout with the far endpoint replaced by the new
/// vertex, and the new triangle is (new vertex, far endpoint, apex).
struct EdgeSplit {
    VertexRef vertex = -1;
    int tri = -1;        // triangle owning the split directed edge
    int slot = -1;       // local index of the edge start in tri
    int new_tri = -1;    // (M, B, C)
    int opp_tri = -1;    // neighbor triangle or -1
    int opp_slot = -1;
    int opp_new_tri = -1;  // (M, A, D)
};

/// Splits edge e at parameter t in (0,1) measured from from(e). Throws InvalidParameter.
EdgeSplit split_edge(TriangleMesh& mesh, EdgeRef e, double t);

}  // namespace gpq

#pragma once

#include <array>
#include <vector>

#include "gpq/mesh.h"

namespace gpq {

/// Rotation by k quarter turns (counter-clockwise).
inline Vec2 rot(int k, const Vec2& p) {
    switch (((k % 4) + 4) % 4) {
        case 1: return {-p.y(), p.x()};
        case 2: return {-p.x(), -p.y()};
        case 3: return {p.y(), -p.x()};
        default: return p;
    }
}
inline Vec2i rot(int k, const Vec2i& p) {
    switch (((k % 4) + 4) % 4) {
        case 1: return {-p.y(), p.x()};
        case 2: return {-p.x(), -p.y()};
        case 3: return {p.y(), -p.x()};
        default: return p;
    }
}

/// Grid-preserving chart change p -> R^k p + T.
struct Transition {
    int k = 0;
    Vec2i T = Vec2i::Zero();

    Vec2 apply(const Vec2& p) const { return rot(k, p) + T.cast<double>(); }
    Vec2i apply(const Vec2i& p) const { return rot(k, p) + T; }
    Vec2 apply_vector(const Vec2& d) const { return rot(k, d); }
    Transition inverse() const { return {(4 - k) % 4, -rot(4 - k, T)}; }
    /// (this o other)(p) = this(other(p)).
    Transition compose(const Transition& other) const { return {(k + other.k) % 4, rot(k, other.T) + T}; }
    bool operator==(const Transition& o) const { return k == o.k && T == o.T; }
};

struct Tolerances {
    double seam_rel = 1e-6;  // scaled by the uv bounding-box diagonal
    double integer = 1e-6;
    double det = 1e-12;
    double index = 1e-3;
};

/// Per-corner map coordinates: uv[c] is the image of corner c in the chart of its triangle.
struct GPMap {
    std::vector<Vec2> uv;
    Tolerances tol;

    const Vec2& at(CornerRef c) const { return uv[c]; }
    double bbox_diagonal() const;
};

struct TransitionFit {
    int k = 0;
    Vec2 T_raw = Vec2::Zero();
    Vec2i T = Vec2i::Zero();
    double residual = 0;

    Transition snapped() const { return {k, T}; }
};

/// Best quarter-turn fit of F_i = R^k F_j + T over the two shared corners.
/// fi[m] and fj[m] are the images of the same surface vertex in both charts.
TransitionFit fit_transition(const std::array<Vec2, 2>& fi, const std::array<Vec2, 2>& fj);

/// Fit across interior directed edge e: maps the chart of opposite(e)'s triangle
/// into the chart of e's triangle.
TransitionFit edge_transition(const TriangleMesh& mesh, const GPMap& map, EdgeRef e);

/// Snapped transitions for every directed edge (identity on boundary edges).
std::vector<Transition> compute_transitions(const TriangleMesh& mesh, const GPMap& map);

double uv_det(const GPMap& map, int tri);

/// Sign of det of the triangle's map: +1, -1, or 0 when |det| <= eps_det * scale^2.
int jacobian_sign(const GPMap& map, int tri);

struct SingularityRecord {
    VertexRef vertex = -1;
    int quarters = 0;  // index = quarters / 4
    double angle_sum = 0;
    double index() const { return quarters / 4.0; }
    int expected_valence() const { return 4 - quarters; }
};

/// Index of an interior vertex from signed corner angles measured in the map.
/// Throws UndefinedIndex on a degenerate incident triangle or a non quarter-multiple sum,
/// InvalidParameter on boundary vertices.
SingularityRecord vertex_index(const TriangleMesh& mesh, const GPMap& map, VertexRef v);

/// Total quarter-turn rotation accumulated by transitions around an interior
/// vertex (0 on boundary vertices).
int vertex_holonomy(const TriangleMesh& mesh, const std::vector<Transition>& transitions, VertexRef v);

struct EdgeResidual {
    EdgeRef edge;
    double residual;
};

struct MapReport {
    double max_seamless_residual = 0;
    double seamless_tolerance = 0;
    std::vector<EdgeResidual> seamless_violations;
    std::vector<EdgeRef> non_integer_edges;
    std::vector<int> reverted;
    std::vector<int> degenerate;
    std::vector<SingularityRecord> singularities;
    std::vector<VertexRef> undefined_index;
    std::vector<VertexRef> sog_violations;

    bool seamless() const { return seamless_violations.empty(); }
    bool grid_preserving() const { return seamless() && non_integer_edges.empty(); }
    bool foldover_free() const { return reverted.empty() && degenerate.empty(); }
    bool accepted() const { return grid_preserving(); }
};

MapReport validate(const TriangleMesh& mesh, const GPMap& map);

/// Translates every chart by delta, propagated through the transitions so that
/// neighbouring charts move coherently.
GPMap shift_map(const TriangleMesh& mesh, const GPMap& map, const Vec2& delta);

/// Splits edge e of the mesh and interpolates the map on the new corners.
VertexRef split_edge(TriangleMesh& mesh, GPMap& map, EdgeRef e, double t);

/// Corner uv of vertex v expressed in the chart of triangle tri (v must be a vertex of tri).
Vec2 vertex_uv_in(const TriangleMesh& mesh, const GPMap& map, int tri, VertexRef v);

}  // namespace gpq

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gpq/ops.h"

namespace gpq {

/// Quad i has vertices quads[i][0..3], counter-clockwise; edge slot 4*i+j runs
/// from quads[i][j] to quads[i][j+1].
struct QuadMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> quads;
    std::vector<int> edge_opp;  // opposite edge slot, -1 on the boundary
    std::vector<int> valence;
    std::vector<bool> boundary;
    std::vector<bool> placed_exactly;
    std::vector<int> quad_node;  // dual node behind each quad, -1 if none
    std::vector<std::string> warnings;

    int nverts() const { return static_cast<int>(vertices.size()); }
    int nquads() const { return static_cast<int>(quads.size()); }
    int boundary_edges() const;
    int edge_count() const { return (4 * nquads() + boundary_edges()) / 2; }
    int euler_characteristic() const { return nverts() - edge_count() + nquads(); }
    bool closed() const { return boundary_edges() == 0; }
    int fallback_count() const;
    /// Valence -> count over interior vertices.
    std::map<int, int> interior_valence_histogram() const;
};

/// Combinatorics only: one quad per alive node, vertices from corner orbits.
QuadMesh assemble(const DualGraph& g);

struct PlacementStats {
    int exact = 0;
    int fallback = 0;
    int disagreeing = 0;  // exact corners of one vertex that did not coincide
};

/// Positions every vertex by tracing diagonals in the map from node points to
/// the corner targets. `map` is the shifted map the graph was built from.
void place_vertices(const DualGraph& g, QuadMesh& qm, const TriangleMesh& mesh, const GPMap& map,
                    PlacementStats* stats = nullptr);

/// Fills edge_opp, valence and boundary from vertex indices alone.
/// Throws PreconditionFailed on non-manifold or inconsistently oriented input.
void build_quad_adjacency(QuadMesh& qm);

/// Isomorphism of the quad/edge incidence structure, respecting orientation.
/// When `vertex_map` is given it receives, for each vertex of a, its image in b.
bool isomorphic(const QuadMesh& a, const QuadMesh& b, std::vector<int>* vertex_map = nullptr);

}  // namespace gpq

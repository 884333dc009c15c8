#pragma once

#include <map>
#include <vector>

#include "gpq/dual_graph.h"

namespace gpq {

// Corner d of a node sits between its ports d and d+1; corner id = 4*node + d.
inline int corner_of(int node, int d) { return 4 * node + ((d % 4) + 4) % 4; }

/// A matched pair where exactly one node is reverted; `normal` is the port on
/// the non-reverted node.
struct Pleat {
    int normal = -1;
    int reverted = -1;
};

std::vector<Pleat> detect_pleats(const DualGraph& g);

/// Reconnects the outside neighbours of both pleat nodes to each other, then
/// deletes the two nodes. Throws IsolationFailed when the pleat is stale.
void remove_pleat(DualGraph& g, const Pleat& pleat);

struct UntangleResult {
    int removed_pairs = 0;
    int dropped_components = 0;  // fully reverted leftovers
    int dropped_nodes = 0;
};

/// Removes pleats until none is left, then drops fully reverted components.
UntangleResult untangle_all(DualGraph& g);

/// Connected components of alive nodes through matched ports.
std::vector<std::vector<int>> connected_components(const DualGraph& g);

/// Quad-mesh vertices as orbits of node corners under the opposite relation.
struct VertexClasses {
    std::vector<int> of_corner;  // -1 for dead nodes
    std::vector<int> corners;    // corner count per class
    std::vector<bool> boundary;
    std::vector<int> rep;        // smallest corner of each class

    int count() const { return static_cast<int>(corners.size()); }
    /// Edge valence: corner count, plus one on boundary classes.
    int valence(int cls) const { return corners[cls] + (boundary[cls] ? 1 : 0); }
};

VertexClasses vertex_classes(const DualGraph& g);

/// Valence of every vertex class, keyed by class id.
std::map<int, int> quad_vertex_valences(const DualGraph& g);

/// Edge of a vertex orbit, crossed while walking corners counter-clockwise.
struct OrbitEdge {
    int before = -1;  // port on the quad preceding the crossing
    int after = -1;   // its opposite port (-1 on a boundary edge)
    int label = 0;    // side of the vertex chart, in the frame of the first corner
};

struct Orbit {
    std::vector<int> corners;
    std::vector<OrbitEdge> edges;  // edges[i] follows corners[i]
    bool closed = true;
};

/// Walks the orbit of a corner. Open orbits start at the corner after a boundary
/// edge and carry a trailing boundary edge.
Orbit vertex_orbit(const DualGraph& g, int corner);

struct PortPair {
    int first = -1;
    int second = -1;
};

/// Saddle lift: two linked pairs on the same iso (same side of a shared vertex
/// chart) are reconnected crosswise. Throws PreconditionFailed.
void op2_saddle_lift(DualGraph& g, PortPair a, PortPair b);

struct FairingConfig {
    int path_threshold = 10;
    bool enabled = true;
};

struct FairingMerge {
    int source_valence = 0;
    int target_valence = 0;
    int path_length = 0;
    int result_valence = 0;
    int source_corner = -1;
    int target_corner = -1;
};

/// Merges low-valence vertices (valence 1, then 2, then 3) into nearby
/// vertices of valence >= 7 through successive saddle lifts.
std::vector<FairingMerge> index_fairing(DualGraph& g, const FairingConfig& config = {});

/// Sum over closed vertex classes of (1 - valence/4), in quarters.
int interior_index_quarters(const DualGraph& g);

}  // namespace gpq

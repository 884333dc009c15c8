#pragma once

#include <vector>

#include "gpq/map.h"

namespace gpq {

// Port directions of a dual node, counter-clockwise in the node's chart.
// A port's direction is the way its link leaves the node, travelling along the
// iso of the other coordinate.
enum PortDir : int { kPlusU = 0, kPlusV = 1, kMinusU = 2, kMinusV = 3 };

inline int port_of(int node, int dir) { return 4 * node + ((dir % 4) + 4) % 4; }
inline int node_of(int port) { return port / 4; }
inline int dir_of(int port) { return port % 4; }

/// Unit step in the map for a port direction.
inline Vec2i dir_vector(int dir) {
    static const Vec2i d[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return d[((dir % 4) + 4) % 4];
}

/// An iso-u / iso-v intersection, seen as an isolated quad with four ports.
struct DualNode {
    int tri = -1;
    Vec2i grid = Vec2i::Zero();  // in the chart of tri
    Vec3 bary = Vec3::Zero();
    bool reverted = false;
    bool alive = true;
};

/// Nodes plus the "opposite" matching on their ports.
class DualGraph {
public:
    std::vector<DualNode> nodes;
    std::vector<int> opposite;  // 4 per node, -1 when unmatched

    int nnodes() const { return static_cast<int>(nodes.size()); }
    int nports() const { return 4 * nnodes(); }
    int alive_count() const;
    int add_node(const DualNode& n);

    bool matched(int port) const { return opposite[port] >= 0; }
    void link(int p, int q);
    void unlink(int p);
    /// Marks the node dead and unmatches its ports.
    void remove_node(int node);

    /// opposite(opposite(p)) == p, no fixed points, no links to dead nodes.
    bool check_involution() const;
    int matched_pairs() const;
    int unmatched_ports() const;
};

/// Every integer point strictly inside a non-degenerate triangle image yields a node.
/// Throws SanitizationBreach when a grid point lies on a triangle's boundary.
std::vector<DualNode> find_nodes(const TriangleMesh& mesh, const GPMap& map);

struct TraceResult {
    enum class Status { Reached, Boundary, Stall };
    Status status = Status::Stall;
    int port = -1;  // arrival port when Reached
    int steps = 0;
};

/// Follows iso-curves across triangles and transitions from one node port to
/// the next node met on the curve.
class IsoTracer {
public:
    IsoTracer(const TriangleMesh& mesh, const GPMap& map, const std::vector<DualNode>& nodes);

    TraceResult trace(int port) const;

private:
    struct Crossing {
        int edge;  // local edge index
        double w;  // other coordinate at the crossing
    };
    int crossings(int tri, int coord, int value, Crossing out[3]) const;

    const TriangleMesh& mesh_;
    const GPMap& map_;
    const std::vector<DualNode>& nodes_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<int>> per_tri_;
};

struct LinkDiagnostics {
    std::vector<int> stalled_ports;
    std::vector<int> non_mutual_ports;
    int boundary_ports = 0;
};

/// Mutual tracing: p and q are linked iff each trace ends at the other.
DualGraph link_ports(std::vector<DualNode> nodes, const TriangleMesh& mesh, const GPMap& map,
                     LinkDiagnostics* diag = nullptr);

DualGraph build_dual_graph(const TriangleMesh& mesh, const GPMap& map, LinkDiagnostics* diag = nullptr);

}  // namespace gpq

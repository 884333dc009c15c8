#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpq/extract.h"
#include "gpq/sanitize.h"

namespace gpq {

struct ExtractConfig {
    std::uint64_t seed = 0;
    double perturbation = 1e-3;
    bool fairing = true;
    int fairing_threshold = 10;
    int max_sanitize_rounds = 16;
};

struct Diagnostics {
    MapReport input;
    int sanitize_rounds = 0;
    int perturbed_vertices = 0;
    int edge_splits = 0;
    int nodes = 0;
    int reverted_nodes = 0;
    int boundary_ports = 0;
    int stalled_ports = 0;
    int non_mutual_ports = 0;
    UntangleResult untangle;
    int reverted_nodes_left = 0;
    int unmatched_ports = 0;
    std::vector<FairingMerge> merges;
    PlacementStats placement;
    std::vector<std::string> warnings;
};

struct ExtractResult {
    QuadMesh quads;
    Diagnostics diag;
    TriangleMesh mesh;   // after sanitizing
    GPMap map;           // shifted by (1/2, 1/2) and sanitized
    DualGraph initial;   // as traced
    DualGraph graph;     // after untangling and fairing
};

/// validate -> shift -> sanitize -> trace -> untangle -> fairing -> assemble -> place.
/// Throws ValidationFailed when the map is not seamless and grid preserving,
/// IsolationFailed when the port matching stops being an involution.
ExtractResult extract_quads(const TriangleMesh& mesh, const GPMap& map, const ExtractConfig& config = {});

}  // namespace gpq

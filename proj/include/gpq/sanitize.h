#pragma once

#include <cstdint>
#include <vector>

#include "gpq/map.h"

namespace gpq {

struct SanitizeConfig {
    double perturbation_norm = 1e-3;
    std::uint64_t rng_seed = 0;
    int max_rounds = 16;
    double grid_eps = 1e-9;  // absolute, map units
};

enum class ViolationKind {
    EdgeOnIso,             // both endpoints share an integer u or v
    EdgeThroughGridPoint,  // open edge passes through an integer point
    VertexOnIso,           // vertex has an integer u or v
};

struct Violation {
    ViolationKind kind;
    EdgeRef edge = -1;
    VertexRef vertex = -1;
};

/// Configurations where an integer iso would touch a mesh vertex or run along an edge.
std::vector<Violation> detect_violations(const TriangleMesh& mesh, const GPMap& map, double grid_eps = 1e-9);

struct Sanitized {
    TriangleMesh mesh;
    GPMap map;
    int rounds_used = 0;
    std::vector<VertexRef> perturbed;
    int splits = 0;
};

/// Vertices with non-zero holonomy cannot be moved without breaking seamlessness.
std::vector<bool> fixed_vertices(const TriangleMesh& mesh, const GPMap& map);

/// Perturbs vertex map coordinates until detect_violations is empty.
/// Throws SanitizeFailed after max_rounds.
Sanitized sanitize(const TriangleMesh& mesh, const GPMap& map, const SanitizeConfig& config = {});

}  // namespace gpq

#include "gpq/pipeline.h"

#include <algorithm>

#include "gpq/error.h"

namespace gpq {

ExtractResult extract_quads(const TriangleMesh& mesh, const GPMap& map, const ExtractConfig& config) {
    ExtractResult res;
    Diagnostics& d = res.diag;
    d.input = validate(mesh, map);
    if (!d.input.accepted()) {
        throw ValidationFailed(std::to_string(d.input.seamless_violations.size()) + " seam residuals above tolerance, " +
                               std::to_string(d.input.non_integer_edges.size()) + " non-integer translations");
    }

    const GPMap shifted = shift_map(mesh, map, Vec2(0.5, 0.5));
    SanitizeConfig sc;
    sc.perturbation_norm = config.perturbation;
    sc.rng_seed = config.seed;
    sc.max_rounds = config.max_sanitize_rounds;
    Sanitized san = sanitize(mesh, shifted, sc);
    d.sanitize_rounds = san.rounds_used;
    d.perturbed_vertices = static_cast<int>(san.perturbed.size());
    d.edge_splits = san.splits;
    res.mesh = std::move(san.mesh);
    res.map = std::move(san.map);

    LinkDiagnostics links;
    res.graph = build_dual_graph(res.mesh, res.map, &links);
    d.nodes = res.graph.nnodes();
    d.reverted_nodes = static_cast<int>(
        std::count_if(res.graph.nodes.begin(), res.graph.nodes.end(), [](const DualNode& n) { return n.reverted; }));
    d.boundary_ports = links.boundary_ports;
    d.stalled_ports = static_cast<int>(links.stalled_ports.size());
    d.non_mutual_ports = static_cast<int>(links.non_mutual_ports.size());
    res.initial = res.graph;

    d.untangle = untangle_all(res.graph);
    if (!res.graph.check_involution()) throw IsolationFailed("opposite relation broken by untangling");
    for (const auto& n : res.graph.nodes)
        if (n.alive && n.reverted) d.reverted_nodes_left++;

    FairingConfig fc;
    fc.enabled = config.fairing;
    fc.path_threshold = config.fairing_threshold;
    d.merges = index_fairing(res.graph, fc);
    if (!res.graph.check_involution()) throw IsolationFailed("opposite relation broken by fairing");
    d.unmatched_ports = res.graph.unmatched_ports();

    res.quads = assemble(res.graph);
    place_vertices(res.graph, res.quads, res.mesh, res.map, &d.placement);
    d.warnings = res.quads.warnings;
    if (d.stalled_ports > 0) d.warnings.push_back("Stall: " + std::to_string(d.stalled_ports) + " ports hit the step cap");
    return res;
}

}  // namespace gpq

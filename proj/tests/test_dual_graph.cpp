#include <algorithm>

#include "doctest.h"
#include "gpq/sanitize.h"
#include "gpq/dual_graph.h"
#include "gpq/error.h"
#include "gpq/generators.h"

using namespace gpq;

namespace {

GPMap half_shift(const Generated& g) { return shift_map(g.mesh, g.map, Vec2(0.5, 0.5)); }

}  // namespace

TEST_CASE("port helpers") {
    CHECK(port_of(3, 2) == 14);
    CHECK(port_of(3, -1) == 15);
    CHECK(node_of(14) == 3);
    CHECK(dir_of(14) == 2);
    CHECK(dir_vector(kPlusV) == Vec2i(0, 1));
    CHECK(dir_vector(kMinusU) == Vec2i(-1, 0));
}

TEST_CASE("identity grid: one node per cell, a full lattice of links") {
    for (int n : {1, 3, 5}) {
        CAPTURE(n);
        const Generated g = gen_identity_square(n);
        const GPMap m = half_shift(g);
        LinkDiagnostics diag;
        const DualGraph dg = build_dual_graph(g.mesh, m, &diag);
        CHECK(dg.nnodes() == n * n);
        CHECK(std::none_of(dg.nodes.begin(), dg.nodes.end(), [](const DualNode& d) { return d.reverted; }));
        CHECK(dg.check_involution());
        CHECK(dg.matched_pairs() == 2 * n * (n - 1));
        CHECK(dg.unmatched_ports() == 4 * n);
        CHECK(diag.boundary_ports == 4 * n);
        CHECK(diag.stalled_ports.empty());
        CHECK(diag.non_mutual_ports.empty());
        for (const auto& node : dg.nodes) {
            // barycentric coordinates reproduce the grid point
            const Vec3 p = g.mesh.point(node.tri, node.bary);
            CHECK(std::abs(p.x() - std::floor(p.x()) - 0.5) < 1e-9);
            CHECK(std::abs(p.y() - std::floor(p.y()) - 0.5) < 1e-9);
        }
    }
}

TEST_CASE("links follow the lattice") {
    const Generated g = gen_identity_square(3);
    const GPMap m = half_shift(g);
    const DualGraph dg = build_dual_graph(g.mesh, m);
    for (int p = 0; p < dg.nports(); p++) {
        const int q = dg.opposite[p];
        if (q < 0) continue;
        const Vec3 a = g.mesh.point(dg.nodes[node_of(p)].tri, dg.nodes[node_of(p)].bary);
        const Vec3 b = g.mesh.point(dg.nodes[node_of(q)].tri, dg.nodes[node_of(q)].bary);
        const Vec2i step = dir_vector(dir_of(p));
        CHECK((b - a).head<2>().isApprox(step.cast<double>(), 1e-9));
        CHECK(dir_of(q) == (dir_of(p) + 2) % 4);
    }
}

TEST_CASE("grid points on triangle boundaries are refused") {
    const Generated g = gen_identity_square(2, 1);
    CHECK_THROWS_AS(find_nodes(g.mesh, g.map), SanitizationBreach);
}

TEST_CASE("folded maps produce reverted nodes") {
    const Generated g = gen_collapse(4);
    const Sanitized s = sanitize(g.mesh, half_shift(g));
    const DualGraph dg = build_dual_graph(s.mesh, s.map);
    CHECK(dg.check_involution());
    CHECK(std::any_of(dg.nodes.begin(), dg.nodes.end(), [](const DualNode& d) { return d.reverted; }));
}

TEST_CASE("graph edits keep the involution") {
    const Generated g = gen_identity_square(3);
    DualGraph dg = build_dual_graph(g.mesh, half_shift(g));
    const int pairs = dg.matched_pairs();
    dg.remove_node(4);
    CHECK(dg.check_involution());
    CHECK(dg.alive_count() == 8);
    CHECK(dg.matched_pairs() == pairs - 4);
    dg.opposite[0] = 0;
    CHECK_FALSE(dg.check_involution());
}

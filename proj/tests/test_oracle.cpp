#include <cmath>

#include "doctest.h"
#include "gpq/error.h"
#include "gpq/oracle.h"
#include "support.h"

using namespace gpq;

TEST_CASE("oracle on the lattice") {
    const Generated g = gen_identity_square(3);
    const QuadMesh q = primal_oracle(g.mesh, g.map);
    CHECK(q.nquads() == 9);
    CHECK(q.nverts() == 16);
    for (const auto& p : q.vertices) {
        CHECK(std::abs(p.x() - std::round(p.x())) < 1e-9);
        CHECK(std::abs(p.y() - std::round(p.y())) < 1e-9);
    }
}

TEST_CASE("oracle and dual extraction agree on smooth warps") {
    for (std::uint64_t seed : {0, 1, 2}) {
        CAPTURE(seed);
        const Generated g = gen_warped_identity(4, seed);
        const QuadMesh ref = primal_oracle(g.mesh, g.map);
        const QuadMesh out = extract_quads(g.mesh, g.map).quads;
        REQUIRE(isomorphic(out, ref));
        CHECK(test::matched_gap(out, ref) < 1e-6);
    }
}

TEST_CASE("oracle refuses folded maps") {
    const Generated g = gen_collapse(4);
    CHECK_THROWS_AS(primal_oracle(g.mesh, g.map), OracleInapplicable);
}

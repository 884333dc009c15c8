#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gpq/error.h"
#include "support.h"

using namespace gpq;

TEST_CASE("breakpoints avoid the integers inside cells") {
    for (int n : {1, 4, 7}) {
        for (int s : {1, 2, 3}) {
            const auto xs = grid_breakpoints(n, s);
            REQUIRE(xs.size() == static_cast<size_t>(n * s + 1));
            CHECK(xs.front() == 0);
            CHECK(xs.back() == n);
            CHECK(std::is_sorted(xs.begin(), xs.end()));
            CHECK(std::adjacent_find(xs.begin(), xs.end()) == xs.end());
        }
    }
}

TEST_CASE("every corpus case is a valid grid preserving map") {
    for (const auto& c : test::invariant_corpus()) {
        CAPTURE(c.name);
        const Generated g = c.make();
        CHECK(g.map.uv.size() == static_cast<size_t>(g.mesh.ncorners()));
        CHECK(validate(g.mesh, g.map).accepted());
    }
}

TEST_CASE("warped identity keeps a positive determinant") {
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        const Generated g = gen_warped_identity(6, seed);
        const MapReport r = validate(g.mesh, g.map);
        CHECK(r.foldover_free());
        CHECK(g.truth.quads == 36);
        double moved = 0;
        const Generated id = gen_identity_square(6);
        for (int c = 0; c < g.mesh.ncorners(); c++) moved = std::max(moved, (g.map.uv[c] - id.map.uv[c]).norm());
        CHECK(moved > 0.01);
    }
}

TEST_CASE("stress generators fold the map") {
    CHECK_FALSE(validate(gen_collapse(4).mesh, gen_collapse(4).map).foldover_free());
    const Generated r = gen_rotated_noise(8, 0, 0.3);
    CHECK_FALSE(validate(r.mesh, r.map).foldover_free());
    CHECK(r.truth.quads == 64);
}

TEST_CASE("cone truth") {
    for (int q : {1, 0, -1, -2, -3, -4, -5}) {
        CAPTURE(q);
        CHECK(gen_cone(q, 8, true).truth.index_quarters == q);
        // signed angle sums count vertices inside a reverted collar as index 2, so sum without one
        const Generated g = gen_cone(q, 8);
        int total = 0;
        for (const auto& s : validate(g.mesh, g.map).singularities) total += s.quarters;
        CHECK(total == q);
    }
}

TEST_CASE("invalid generator parameters") {
    CHECK_THROWS_AS(gen_identity_square(0), InvalidParameter);
    CHECK_THROWS_AS(gen_cone(2), InvalidParameter);
    CHECK_THROWS_AS(gen_cone(-1, 4, true), InvalidParameter);
    CHECK_THROWS_AS(gen_rotated_noise(8, 0, -1), InvalidParameter);
    CHECK_THROWS_AS(gen_multiboundary_failure(4), InvalidParameter);
}

TEST_CASE("layouts with two singularities") {
    const Generated sep = gen_unseparated_singularities(true);
    const Generated joined = gen_unseparated_singularities(false);
    CHECK(validate(sep.mesh, sep.map).singularities.size() == 2);
    CHECK(validate(joined.mesh, joined.map).accepted());
    // the joined layout is flat in the plane
    for (const auto& p : joined.mesh.vertices) CHECK(p.z() == 0);
}

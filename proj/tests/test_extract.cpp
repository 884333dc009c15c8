#include <map>
#include <set>
#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gpq/error.h"
#include "support.h"

using namespace gpq;

TEST_CASE("lattice quads: counts, orientation, exact placement") {
    const Generated g = gen_identity_square(3);
    const ExtractResult r = extract_quads(g.mesh, g.map);
    const QuadMesh& q = r.quads;
    CHECK(q.nquads() == 9);
    CHECK(q.nverts() == 16);
    CHECK(q.boundary_edges() == 12);
    CHECK(q.edge_count() == 24);
    CHECK(q.euler_characteristic() == 1);
    CHECK(q.fallback_count() == 0);
    CHECK(q.interior_valence_histogram() == std::map<int, int>{{4, 4}});
    for (const auto& f : q.quads) {
        // counter-clockwise in the plane
        double area = 0;
        for (int i = 0; i < 4; i++) {
            const Vec3& a = q.vertices[f[i]];
            const Vec3& b = q.vertices[f[(i + 1) % 4]];
            area += a.x() * b.y() - a.y() * b.x();
        }
        CHECK(area / 2 == doctest::Approx(1.0));
    }
    for (int e = 0; e < 4 * q.nquads(); e++) {
        const int o = q.edge_opp[e];
        if (o < 0) continue;
        CHECK(q.edge_opp[o] == e);
        CHECK(q.quads[e / 4][e % 4] == q.quads[o / 4][(o % 4 + 1) % 4]);
    }
}

TEST_CASE("adjacency rebuilt from indices matches the assembled one") {
    const Generated g = gen_cone(-2, 6);
    const QuadMesh a = extract_quads(g.mesh, g.map).quads;
    QuadMesh b;
    b.vertices = a.vertices;
    b.quads = a.quads;
    build_quad_adjacency(b);
    CHECK(b.valence == a.valence);
    CHECK(b.boundary == a.boundary);
    CHECK(isomorphic(a, b));
}

TEST_CASE("non-manifold quad input is refused") {
    QuadMesh q;
    q.vertices.assign(6, Vec3::Zero());
    q.quads = {{0, 1, 2, 2}};
    CHECK_THROWS_AS(build_quad_adjacency(q), PreconditionFailed);
    q.quads = {{0, 1, 2, 3}, {0, 1, 4, 5}};
    CHECK_THROWS_AS(build_quad_adjacency(q), PreconditionFailed);
}

TEST_CASE("isomorphism sees through relabelling") {
    const Generated g = gen_cone(1, 6);
    const QuadMesh a = extract_quads(g.mesh, g.map).quads;
    std::mt19937_64 rng(3);
    std::vector<int> perm(a.nverts());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    QuadMesh b;
    b.vertices.resize(a.nverts());
    for (int v = 0; v < a.nverts(); v++) b.vertices[perm[v]] = a.vertices[v];
    for (const auto& f : a.quads) {
        const int r = static_cast<int>(rng() % 4);
        std::array<int, 4> h{};
        for (int i = 0; i < 4; i++) h[i] = perm[f[(i + r) % 4]];
        b.quads.push_back(h);
    }
    std::shuffle(b.quads.begin(), b.quads.end(), rng);
    build_quad_adjacency(b);
    std::vector<int> map;
    REQUIRE(isomorphic(a, b, &map));
    // the cone is symmetric, so any map that carries quads onto quads will do
    std::set<std::array<int, 4>> faces;
    for (auto f : b.quads) {
        std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
        faces.insert(f);
    }
    for (const auto& f : a.quads) {
        std::array<int, 4> h{};
        for (int i = 0; i < 4; i++) h[i] = map[f[i]];
        std::rotate(h.begin(), std::min_element(h.begin(), h.end()), h.end());
        CHECK(faces.count(h) == 1);
    }

    // an L of four cells has no mirror symmetry, so reversing it gives a different mesh
    QuadMesh l;
    std::map<std::pair<int, int>, int> ids;
    const auto at = [&](int x, int y) {
        const auto [it, fresh] = ids.try_emplace({x, y}, l.nverts());
        if (fresh) l.vertices.emplace_back(x, y, 0);
        return it->second;
    };
    for (auto [x, y] : {std::pair{0, 0}, {1, 0}, {2, 0}, {2, 1}})
        l.quads.push_back({at(x, y), at(x + 1, y), at(x + 1, y + 1), at(x, y + 1)});
    build_quad_adjacency(l);
    QuadMesh m = l;
    for (auto& f : m.quads) std::reverse(f.begin(), f.end());
    build_quad_adjacency(m);
    CHECK(isomorphic(l, l));
    CHECK_FALSE(isomorphic(l, m));
    CHECK_FALSE(isomorphic(a, extract_quads(gen_cone(0, 6).mesh, gen_cone(0, 6).map).quads));
}

TEST_CASE("closed outputs") {
    SUBCASE("torus") {
        const Generated g = gen_torus(4);
        const QuadMesh q = extract_quads(g.mesh, g.map).quads;
        CHECK(q.closed());
        CHECK(q.nquads() == 16);
        CHECK(q.euler_characteristic() == 0);
        CHECK(q.interior_valence_histogram() == std::map<int, int>{{4, 16}});
    }
    SUBCASE("cube") {
        const Generated g = gen_cube(3);
        const QuadMesh q = extract_quads(g.mesh, g.map).quads;
        CHECK(q.closed());
        CHECK(q.nquads() == 54);
        CHECK(q.euler_characteristic() == 2);
        CHECK(q.interior_valence_histogram().at(3) == 8);
    }
}

TEST_CASE("placement lands on grid preimages") {
    const Generated g = gen_warped_identity(5, 4);
    const ExtractResult r = extract_quads(g.mesh, g.map);
    CHECK(r.diag.placement.fallback == 0);
    CHECK(r.quads.fallback_count() == 0);
    for (int v = 0; v < r.quads.nverts(); v++) CHECK(r.quads.placed_exactly[v]);
}

TEST_CASE("pipeline refuses a non grid preserving map") {
    Generated g = gen_identity_square(3);
    for (int i = 0; i < 3; i++) g.map.uv[i] += Vec2(0.25, 0);
    CHECK_THROWS_AS(extract_quads(g.mesh, g.map), ValidationFailed);
}

TEST_CASE("diagnostics are filled") {
    const Generated g = gen_collapse(4);
    const ExtractResult r = extract_quads(g.mesh, g.map);
    const Diagnostics& d = r.diag;
    CHECK(d.nodes >= 16);
    CHECK(d.reverted_nodes > 0);
    CHECK(d.untangle.removed_pairs > 0);
    CHECK(d.reverted_nodes_left == 0);
    CHECK(d.unmatched_ports == 16);
    CHECK(d.placement.exact + d.placement.fallback == r.quads.nverts());
    CHECK(r.initial.nnodes() == d.nodes);
}

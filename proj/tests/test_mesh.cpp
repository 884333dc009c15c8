#include "doctest.h"
#include "gpq/error.h"
#include "gpq/mesh.h"

using namespace gpq;

namespace {

TriangleMesh square() {
    return TriangleMesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{{0, 1, 2}}, {{0, 2, 3}}});
}

TriangleMesh tetrahedron() {
    return TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{{0, 2, 1}}, {{0, 1, 3}}, {{1, 2, 3}}, {{0, 3, 2}}});
}

}  // namespace

TEST_CASE("adjacency of two triangles") {
    const TriangleMesh m = square();
    CHECK(m.count_boundary_edges() == 4);
    CHECK(m.count_undirected_edges() == 5);
    CHECK(m.euler_characteristic() == 1);
    // edge 2 of t0 runs 2 -> 0, edge 0 of t1 runs 0 -> 2
    CHECK(m.opposite(2) == 3);
    CHECK(m.opposite(3) == 2);
    CHECK(m.from(2) == m.to(3));
    CHECK(m.is_boundary(0));
}

TEST_CASE("closed surface") {
    const TriangleMesh m = tetrahedron();
    CHECK(m.count_boundary_edges() == 0);
    CHECK(m.euler_characteristic() == 2);
    for (int v = 0; v < m.nverts(); v++) {
        bool closed = false;
        const auto fan = m.vertex_fan(v, &closed);
        CHECK(closed);
        CHECK(fan.size() == 3);
        CHECK_FALSE(m.is_boundary_vertex(v));
    }
}

TEST_CASE("boundary fan starts on the boundary") {
    const TriangleMesh m = square();
    bool closed = true;
    const auto fan = m.vertex_fan(0, &closed);
    CHECK_FALSE(closed);
    REQUIRE(fan.size() == 2);
    CHECK(m.is_boundary(fan.front()));
    for (int c : fan) CHECK(m.vert(c) == 0);
}

TEST_CASE("rotation walks around an interior vertex") {
    // fan of four triangles around vertex 4
    TriangleMesh m({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}, {1, 1, 0}},
                   {{{0, 1, 4}}, {{1, 2, 4}}, {{2, 3, 4}}, {{3, 0, 4}}});
    bool closed = false;
    const auto fan = m.vertex_fan(4, &closed);
    CHECK(closed);
    CHECK(fan.size() == 4);
    int c = fan.front();
    for (int i = 0; i < 4; i++) c = m.rotate(c);
    CHECK(c == fan.front());
}

TEST_CASE("invalid connectivity is rejected") {
    SUBCASE("three triangles on one edge") {
        CHECK_THROWS_AS(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
                                     {{{0, 1, 2}}, {{1, 0, 3}}, {{0, 1, 4}}}),
                        NonManifold);
    }
    SUBCASE("flipped neighbour") {
        CHECK_THROWS_AS(TriangleMesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{{0, 1, 2}}, {{0, 3, 2}}}),
                        InconsistentOrientation);
    }
    SUBCASE("zero area") {
        const TriangleMesh m({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {{{0, 1, 2}}});
        CHECK_THROWS_AS(m.check_nondegenerate(), DegenerateTriangle);
    }
}

TEST_CASE("edge split keeps topology and area") {
    TriangleMesh m = square();
    const double before = m.triangle_area(0) + m.triangle_area(1);
    const EdgeSplit s = split_edge(m, 2, 0.25);
    CHECK(m.nverts() == 5);
    CHECK(m.ntris() == 4);
    CHECK(m.euler_characteristic() == 1);
    CHECK(m.count_boundary_edges() == 4);
    double after = 0;
    for (int t = 0; t < m.ntris(); t++) after += m.triangle_area(t);
    CHECK(after == doctest::Approx(before));
    CHECK(m.vertices[s.vertex].isApprox(Vec3(0.75, 0.75, 0)));
    CHECK_THROWS_AS(split_edge(m, 0, 1.0), InvalidParameter);
}

TEST_CASE("barycentric points") {
    const TriangleMesh m = square();
    CHECK(m.point(0, Vec3(1, 0, 0)).isApprox(m.vertices[0]));
    CHECK(m.point(1, Vec3(1, 1, 1) / 3).isApprox(Vec3(1.0 / 3, 2.0 / 3, 0)));
}

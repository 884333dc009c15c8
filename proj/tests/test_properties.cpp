#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gpq/error.h"
#include "gpq/io.h"
#include "gpq/sanitize.h"
#include "support.h"

using namespace gpq;

namespace {

std::string obj_text(const QuadMesh& q) {
    std::ostringstream s;
    write_quad_obj(q, s);
    return s.str();
}

}  // namespace

TEST_CASE("pipeline invariants over the generator corpus") {
    const auto corpus = test::invariant_corpus();
    REQUIRE(corpus.size() >= 100);
    for (const auto& c : corpus) {
        CAPTURE(c.name);
        const Generated g = c.make();
        const ExtractResult r = extract_quads(g.mesh, g.map);

        CHECK(r.initial.check_involution());
        CHECK(r.graph.check_involution());

        CHECK(validate(r.mesh, r.map).grid_preserving());
        CHECK(detect_violations(r.mesh, r.map).empty());

        CHECK(r.quads.euler_characteristic() == g.mesh.euler_characteristic());
        if (r.quads.closed()) CHECK(interior_index_quarters(r.graph) == 4 * g.mesh.euler_characteristic());

        // the output index is the input index whenever the whole surface is closed
        if (g.mesh.count_boundary_edges() == 0) {
            int input = 0;
            for (const auto& s : validate(g.mesh, g.map).singularities) input += s.quarters;
            CHECK(input == interior_index_quarters(r.graph));
        }

        const ExtractResult again = extract_quads(g.mesh, g.map);
        CHECK(obj_text(again.quads) == obj_text(r.quads));
    }
}

TEST_CASE("seed changes the perturbation, never the result on clean maps") {
    for (std::uint64_t s = 0; s < 100; s++) {
        const Generated g = gen_warped_identity(3, s);
        ExtractConfig a, b;
        a.seed = s;
        b.seed = s + 1000;
        CHECK(isomorphic(extract_quads(g.mesh, g.map, a).quads, extract_quads(g.mesh, g.map, b).quads));
    }
}

TEST_CASE("untangling dichotomy on random noise") {
    for (std::uint64_t s = 0; s < 100; s++) {
        CAPTURE(s);
        const Generated g = gen_rotated_noise(5 + static_cast<int>(s % 3), s, 0.15 + 0.003 * static_cast<double>(s));
        const ExtractResult r = extract_quads(g.mesh, g.map);
        DualGraph t = r.initial;
        test::remove_all_pleats(t);
        CHECK(detect_pleats(t).empty());
        CHECK(test::homogeneous_components(t));
        CHECK(t.check_involution());
        CHECK(detect_pleats(r.graph).empty());
    }
}

TEST_CASE("random tangles are undone") {
    std::mt19937_64 rng(99);
    const Generated g = gen_identity_square(6);
    ExtractConfig cfg;
    cfg.fairing = false;
    const DualGraph base = extract_quads(g.mesh, g.map, cfg).graph;
    const QuadMesh want = assemble(base);
    for (int i = 0; i < 100; i++) {
        DualGraph h = base;
        const int count = 1 + static_cast<int>(rng() % 3);
        std::vector<int> used;
        for (int k = 0; k < count; k++) {
            const int node = static_cast<int>(rng() % static_cast<std::uint64_t>(base.nnodes()));
            if (std::find(used.begin(), used.end(), node) != used.end()) continue;
            used.push_back(node);
            test::tangle(h, node, static_cast<int>(rng() % 4));
        }
        CHECK(h.check_involution());
        const UntangleResult r = untangle_all(h);
        CHECK(r.removed_pairs == static_cast<int>(used.size()));
        CHECK(isomorphic(assemble(h), want));
    }
}

TEST_CASE("saddle lifts conserve the total index") {
    std::mt19937_64 rng(5);
    int lifts = 0;
    for (int q : {-1, -2, -4, -5}) {
        ExtractConfig cfg;
        cfg.fairing = false;
        const Generated gen = gen_cone(q, 8);
        DualGraph g = extract_quads(gen.mesh, gen.map, cfg).graph;
        const int total = interior_index_quarters(g);
        for (int attempt = 0; attempt < 300; attempt++) {
            const int node = static_cast<int>(rng() % static_cast<std::uint64_t>(g.nnodes()));
            const Orbit o = vertex_orbit(g, corner_of(node, static_cast<int>(rng() % 4)));
            if (!o.closed || o.edges.size() < 5) continue;
            const size_t i = rng() % o.edges.size(), j = (i + 4) % o.edges.size();
            DualGraph h = g;
            try {
                op2_saddle_lift(h, {o.edges[i].before, o.edges[i].after}, {o.edges[j].before, o.edges[j].after});
            } catch (const Error&) {
                continue;
            }
            CHECK(h.check_involution());
            CHECK(interior_index_quarters(h) == total);
            g = h;
            lifts++;
        }
    }
    CHECK(lifts >= 1);
}

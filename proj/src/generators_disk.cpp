#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Sparse>

#include "gpq/error.h"
#include "gpq/generators.h"

namespace gpq {

namespace {

constexpr int kSectors = 16;

// Fan of kSectors sectors and `rings` rings around vertex 0.
TriangleMesh polar_fan(int rings) {
    std::vector<Vec3> verts{Vec3::Zero()};
    for (int r = 1; r <= rings; r++) {
        for (int j = 0; j < kSectors; j++) {
            const double th = 2 * std::numbers::pi * j / kSectors;
            verts.emplace_back(r * std::cos(th), r * std::sin(th), 0);
        }
    }
    auto id = [](int r, int j) { return r == 0 ? 0 : 1 + (r - 1) * kSectors + (j % kSectors); };
    std::vector<std::array<int, 3>> tris;
    for (int j = 0; j < kSectors; j++) tris.push_back({0, id(1, j), id(1, j + 1)});
    for (int r = 1; r < rings; r++) {
        for (int j = 0; j < kSectors; j++) {
            tris.push_back({id(r, j), id(r + 1, j), id(r + 1, j + 1)});
            tris.push_back({id(r, j), id(r + 1, j + 1), id(r, j + 1)});
        }
    }
    return TriangleMesh(std::move(verts), std::move(tris));
}

// Ring and unwrapped sector of a fan vertex, as seen from triangle t.
std::pair<int, int> fan_coords(const TriangleMesh& mesh, int t, int v) {
    if (v == 0) return {0, 0};
    const int r = 1 + (v - 1) / kSectors;
    int j = (v - 1) % kSectors;
    bool has_last = false, has_first = false;
    for (int w : mesh.triangles[t]) {
        if (w == 0) continue;
        has_last |= (w - 1) % kSectors == kSectors - 1;
        has_first |= (w - 1) % kSectors == 0;
    }
    // the triangle straddling the seam sees sector 0 as sector kSectors
    if (has_last && has_first && j == 0) j = kSectors;
    return {r, j};
}

}  // namespace

Generated gen_cone(int quarters, int rings, bool reverted_collar) {
    if (quarters > 1) throw InvalidParameter("cone index must be <= 1/4");
    if (rings < (reverted_collar ? 6 : 2)) throw InvalidParameter("too few rings");
    Generated g{polar_fan(rings), {}, {}};
    const double alpha = 1 - quarters / 4.0;

    std::vector<double> profile(rings + 1);
    const int a = rings / 2 - 1;
    for (int r = 0; r <= rings; r++) {
        if (!reverted_collar || r <= a) profile[r] = r;
        else if (r == a + 1) profile[r] = a - 0.8;
        else profile[r] = r - 1.6;
    }
    g.map.uv.resize(g.mesh.ncorners());
    for (int c = 0; c < g.mesh.ncorners(); c++) {
        const auto [r, j] = fan_coords(g.mesh, tri_of(c), g.mesh.vert(c));
        const double rho = rings * std::pow(profile[r] / profile[rings], alpha);
        const double th = alpha * 2 * std::numbers::pi * j / kSectors;
        g.map.uv[c] = rho * Vec2(std::cos(th), std::sin(th));
    }
    g.truth.index_quarters = quarters;
    g.truth.regular_elided = true;
    if (quarters != 0 && quarters > -5) g.truth.interior_valences[4 - quarters] = 1;
    g.truth.euler = 1;
    g.truth.note = reverted_collar ? "cone with a reverted collar" : "cone";
    return g;
}

Generated gen_saddle_lift(bool lifted, double height) {
    Generated g = gen_cone(-4, 8, false);
    if (lifted) {
        const double r0 = 5;
        for (int c = 0; c < g.mesh.ncorners(); c++) {
            const double d = g.mesh.vertices[g.mesh.vert(c)].norm();
            if (d < r0) {
                const double s = 1 - (d / r0) * (d / r0);
                g.map.uv[c].x() += height * s * s;
            }
        }
        g.truth.interior_valences.clear();
        g.truth.note = "saddle lifted past u = 1/2";
    } else {
        g.truth.note = "double saddle";
    }
    return g;
}

Generated gen_multiboundary_failure(int rings) {
    if (rings < 8) throw InvalidParameter("too few rings");
    Generated g = gen_cone(-4, rings, false);
    // Unit plateau in both coordinates around the apex, smoothstep wall. The
    // saddle keeps zero holonomy, so one offset is valid in every chart.
    const double inner = 2, wall = 1.5;
    for (int c = 0; c < g.mesh.ncorners(); c++) {
        const double d = g.mesh.vertices[g.mesh.vert(c)].norm();
        double lift = 1;
        if (d >= inner + wall) lift = 0;
        else if (d > inner) {
            const double t = (d - inner) / wall;
            lift = 1 - t * t * (3 - 2 * t);
        }
        g.map.uv[c] += Vec2(lift, lift);
    }
    g.truth.note = "saddle under one layer lift per coordinate; truth is the unlifted cone";
    return g;
}

namespace {

// Uniform-weight Tutte embedding with the boundary loop on the unit circle.
void tutte_embed(TriangleMesh& mesh, double radius) {
    const int nv = mesh.nverts();
    std::vector<int> next(nv, -1);
    int start = -1;
    for (int e = 0; e < mesh.ncorners(); e++) {
        if (!mesh.is_boundary(e)) continue;
        next[mesh.from(e)] = mesh.to(e);
        if (start < 0 || mesh.from(e) < start) start = mesh.from(e);
    }
    if (start < 0) throw InvalidParameter("tutte embedding needs a boundary");
    std::vector<int> loop{start};
    for (int v = next[start]; v != start; v = next[v]) {
        if (v < 0 || static_cast<int>(loop.size()) > nv) throw InvalidParameter("boundary is not a single loop");
        loop.push_back(v);
    }
    std::vector<int> slot(nv, -1);
    for (int i = 0; i < static_cast<int>(loop.size()); i++) {
        const double th = 2 * std::numbers::pi * i / loop.size();
        mesh.vertices[loop[i]] = Vec3(radius * std::cos(th), radius * std::sin(th), 0);
        slot[loop[i]] = -2;
    }
    int ni = 0;
    for (int v = 0; v < nv; v++)
        if (slot[v] == -1) slot[v] = ni++;

    std::vector<std::vector<int>> nbr(nv);
    for (int e = 0; e < mesh.ncorners(); e++) {
        if (!mesh.is_boundary(e) && mesh.opposite(e) < e) continue;
        nbr[mesh.from(e)].push_back(mesh.to(e));
        nbr[mesh.to(e)].push_back(mesh.from(e));
    }
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(ni, 2);
    for (int v = 0; v < nv; v++) {
        if (slot[v] < 0) continue;
        trip.emplace_back(slot[v], slot[v], static_cast<double>(nbr[v].size()));
        for (int w : nbr[v]) {
            if (slot[w] >= 0) trip.emplace_back(slot[v], slot[w], -1.0);
            else rhs.row(slot[v]) += mesh.vertices[w].head<2>().transpose();
        }
    }
    Eigen::SparseMatrix<double> L(ni, ni);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
    const Eigen::MatrixXd x = solver.solve(rhs);
    for (int v = 0; v < nv; v++)
        if (slot[v] >= 0) mesh.vertices[v] = Vec3(x(slot[v], 0), x(slot[v], 1), 0);
}

struct Patch {
    std::array<int, 4> corner;  // layout vertices, counter-clockwise
    int w, h;                   // map lengths along corner0->corner1 and corner1->corner2
};

// Subdivides a quad layout into charts [0,w] x [0,h] and glues shared sides.
Generated layout_mesh(int nlayout, const std::vector<Patch>& patches, int subdivisions) {
    // sides are shared in the same direction except unit-or-shorter ones, which
    // stay symmetric under reversal
    auto coords = [&](int len) {
        if (len == 0) return std::vector<double>(3, 0.0);
        if (len == 1) return std::vector<double>{0.0, 1.0};
        return grid_breakpoints(len, subdivisions);
    };
    std::vector<Vec3> verts(nlayout, Vec3::Zero());
    std::map<std::array<int, 3>, int> edge_vertex;
    auto side_vertex = [&](int a, int b, int k, int count) {
        const std::array<int, 3> key = a < b ? std::array<int, 3>{a, b, k} : std::array<int, 3>{b, a, count - k};
        auto [it, fresh] = edge_vertex.emplace(key, static_cast<int>(verts.size()));
        if (fresh) verts.emplace_back(Vec3::Zero());
        return it->second;
    };
    std::vector<std::array<int, 3>> tris;
    std::vector<Vec2> uv;
    for (const auto& p : patches) {
        const auto us = coords(p.w), vs = coords(p.h);
        const int nu = static_cast<int>(us.size()) - 1, nv = static_cast<int>(vs.size()) - 1;
        std::vector<int> id((nu + 1) * (nv + 1));
        for (int j = 0; j <= nv; j++) {
            for (int i = 0; i <= nu; i++) {
                int v;
                if (i == 0 && j == 0) v = p.corner[0];
                else if (i == nu && j == 0) v = p.corner[1];
                else if (i == nu && j == nv) v = p.corner[2];
                else if (i == 0 && j == nv) v = p.corner[3];
                else if (j == 0) v = side_vertex(p.corner[0], p.corner[1], i, nu);
                else if (i == nu) v = side_vertex(p.corner[1], p.corner[2], j, nv);
                else if (j == nv) v = side_vertex(p.corner[3], p.corner[2], i, nu);
                else if (i == 0) v = side_vertex(p.corner[0], p.corner[3], j, nv);
                else {
                    v = static_cast<int>(verts.size());
                    verts.emplace_back(Vec3::Zero());
                }
                id[j * (nu + 1) + i] = v;
            }
        }
        for (int j = 0; j < nv; j++) {
            for (int i = 0; i < nu; i++) {
                auto at = [&](int di, int dj) { return id[(j + dj) * (nu + 1) + i + di]; };
                auto UV = [&](int di, int dj) { return Vec2(us[i + di], vs[j + dj]); };
                tris.push_back({at(0, 0), at(1, 0), at(0, 1)});
                uv.insert(uv.end(), {UV(0, 0), UV(1, 0), UV(0, 1)});
                tris.push_back({at(1, 0), at(1, 1), at(0, 1)});
                uv.insert(uv.end(), {UV(1, 0), UV(1, 1), UV(0, 1)});
            }
        }
    }
    Generated g{TriangleMesh(std::move(verts), std::move(tris)), {}, {}};
    g.map.uv = std::move(uv);
    tutte_embed(g.mesh, 10.0);
    return g;
}

}  // namespace

Generated gen_unseparated_singularities(bool separated, int arm) {
    if (arm < 2) throw InvalidParameter("arm must be >= 2");
    // layout vertices
    enum { A, B, A1, B1, A2, B2, E1, E2, F1, F2, F3, H1, H2, K1, K2, K3, kCount };
    const int d = separated ? 1 : 0, L = arm;
    const std::vector<Patch> patches{
        {{A, B, B1, A1}, d, L},    // above the A-B side
        {{B, A, A2, B2}, d, L},    // below it
        {{A, A1, F1, E1}, L, L},  {{A, E1, F2, E2}, L, L}, {{A, E2, F3, A2}, L, L},
        {{B, B2, K1, H1}, L, L},  {{B, H1, K2, H2}, L, L}, {{B, H2, K3, B1}, L, L},
    };
    Generated g = layout_mesh(kCount, patches, 2);
    g.truth.index_quarters = -2;
    g.truth.regular_elided = true;
    if (separated) g.truth.interior_valences[5] = 2;
    else g.truth.interior_valences[6] = 1;
    g.truth.euler = 1;
    g.truth.note = separated ? "two cones one unit apart" : "two cones in one chart";
    return g;
}

}  // namespace gpq

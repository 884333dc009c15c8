#include "gpq/generators.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gpq/error.h"

namespace gpq {

namespace {

// Vertex (i,j) = j*nx + i; each cell split along its anti-diagonal.
TriangleMesh grid_mesh(const std::vector<double>& xs, const std::vector<double>& ys) {
    const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
    std::vector<Vec3> verts;
    for (int j = 0; j < ny; j++)
        for (int i = 0; i < nx; i++) verts.emplace_back(xs[i], ys[j], 0);
    std::vector<std::array<int, 3>> tris;
    for (int j = 0; j + 1 < ny; j++) {
        for (int i = 0; i + 1 < nx; i++) {
            const int v00 = j * nx + i, v10 = v00 + 1, v01 = v00 + nx, v11 = v01 + 1;
            tris.push_back({v00, v10, v01});
            tris.push_back({v10, v11, v01});
        }
    }
    return TriangleMesh(std::move(verts), std::move(tris));
}

GPMap map_from_positions(const TriangleMesh& mesh) {
    GPMap map;
    map.uv.resize(mesh.ncorners());
    for (int c = 0; c < mesh.ncorners(); c++) map.uv[c] = mesh.vertices[mesh.vert(c)].head<2>();
    return map;
}

Truth grid_truth(int n) {
    Truth t;
    t.quads = n * n;
    t.vertices = (n + 1) * (n + 1);
    if (n > 1) t.interior_valences[4] = (n - 1) * (n - 1);
    t.euler = 1;
    return t;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameter(what);
}

}  // namespace

std::vector<double> grid_breakpoints(int n, int subdivisions) {
    require(n >= 1, "n must be >= 1");
    require(subdivisions >= 1, "subdivisions must be >= 1");
    std::vector<double> xs;
    for (int i = 0; i < n; i++)
        for (int k = 0; k < subdivisions; k++) xs.push_back(i + 0.93 * k / subdivisions);
    xs.push_back(n);
    return xs;
}

Generated gen_identity_square(int n, int subdivisions) {
    const auto xs = grid_breakpoints(n, subdivisions);
    Generated g{grid_mesh(xs, xs), {}, grid_truth(n)};
    g.map = map_from_positions(g.mesh);
    return g;
}

Generated gen_warped_identity(int n, std::uint64_t seed, double amplitude, int subdivisions) {
    Generated g = gen_identity_square(n, subdivisions);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(1, 2);
    struct Mode {
        int a, b;
        double cu, cv;
    };
    std::vector<Mode> modes(3);
    for (auto& m : modes) m = {freq(rng), freq(rng), coef(rng), coef(rng)};
    const GPMap base = g.map;
    for (double amp = amplitude; amp > 1e-6; amp *= 0.5) {
        for (int c = 0; c < g.mesh.ncorners(); c++) {
            const Vec2 p = base.uv[c];
            Vec2 d = Vec2::Zero();
            for (const auto& m : modes) {
                const double s = std::sin(std::numbers::pi * m.a * p.x() / n) * std::sin(std::numbers::pi * m.b * p.y() / n);
                d += s * Vec2(m.cu, m.cv);
            }
            g.map.uv[c] = p + amp * d;
        }
        bool ok = true;
        for (int t = 0; t < g.mesh.ntris() && ok; t++) ok = uv_det(g.map, t) > 0.05 * uv_det(base, t);
        if (ok) return g;
    }
    g.map = base;
    return g;
}

Generated gen_collapse(int n, double jitter, std::uint64_t seed) {
    std::vector<double> xs;
    for (int i = 0; i <= n; i++) xs.push_back(i);
    require(n >= 1, "n must be >= 1");
    Generated g{grid_mesh(xs, xs), {}, grid_truth(n)};
    g.map = map_from_positions(g.mesh);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec2> at(g.mesh.nverts());
    for (auto& p : at) p = Vec2(u(rng), u(rng)) * jitter;
    for (int c = 0; c < g.mesh.ncorners(); c++) {
        const int v = g.mesh.vert(c);
        const Vec3& p = g.mesh.vertices[v];
        const bool ring = p.x() == 0 || p.y() == 0 || p.x() == n || p.y() == n;
        if (!ring) g.map.uv[c] = at[v];
    }
    g.truth.note = "interior collapsed to (0,0)";
    return g;
}

Generated gen_rotated_noise(int n, std::uint64_t seed, double amplitude, int subdivisions) {
    require(amplitude >= 0, "amplitude must be >= 0");
    const auto xs = grid_breakpoints(n, subdivisions);
    Generated g{grid_mesh(xs, xs), {}, grid_truth(n)};
    const int m = n / 2;
    const Vec2 centre(m, m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    std::vector<Vec2> noise(g.mesh.nverts());
    for (auto& d : noise) d = Vec2(u(rng), u(rng));

    auto build = [&](bool with_noise) {
        GPMap map;
        map.uv.resize(g.mesh.ncorners());
        for (int t = 0; t < g.mesh.ntris(); t++) {
            double cx = 0;
            for (int i = 0; i < 3; i++) cx += g.mesh.vertices[g.mesh.triangles[t][i]].x() / 3;
            for (int i = 0; i < 3; i++) {
                const int v = g.mesh.triangles[t][i];
                Vec2 p = g.mesh.vertices[v].head<2>();
                if (with_noise) p += noise[v];
                map.uv[3 * t + i] = cx > m ? Vec2(rot(1, Vec2(p - centre)) + centre) : p;
            }
        }
        return map;
    };
    g.map = build(true);
    g.truth.transitions = compute_transitions(g.mesh, build(false));
    g.truth.note = "quarter-turn chart on x > " + std::to_string(m);
    return g;
}

Generated gen_torus(int n, int subdivisions) {
    const auto xs = grid_breakpoints(n, subdivisions);
    const int N = static_cast<int>(xs.size()) - 1;
    const double R = 0.5 * n, r = 0.2 * n;
    std::vector<Vec3> verts;
    for (int j = 0; j < N; j++) {
        for (int i = 0; i < N; i++) {
            const double th = 2 * std::numbers::pi * xs[i] / n, ph = 2 * std::numbers::pi * xs[j] / n;
            verts.emplace_back((R + r * std::cos(ph)) * std::cos(th), (R + r * std::cos(ph)) * std::sin(th), r * std::sin(ph));
        }
    }
    auto id = [&](int i, int j) { return (j % N) * N + (i % N); };
    std::vector<std::array<int, 3>> tris;
    std::vector<Vec2> uv;
    for (int j = 0; j < N; j++) {
        for (int i = 0; i < N; i++) {
            tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            uv.insert(uv.end(), {Vec2(xs[i], xs[j]), Vec2(xs[i + 1], xs[j]), Vec2(xs[i], xs[j + 1])});
            tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            uv.insert(uv.end(), {Vec2(xs[i + 1], xs[j]), Vec2(xs[i + 1], xs[j + 1]), Vec2(xs[i], xs[j + 1])});
        }
    }
    Generated g{TriangleMesh(std::move(verts), std::move(tris)), {}, {}};
    g.map.uv = std::move(uv);
    g.truth.quads = n * n;
    g.truth.vertices = n * n;
    g.truth.interior_valences[4] = n * n;
    g.truth.euler = 0;
    return g;
}

Generated gen_cube(int n, int subdivisions) {
    const auto xs = grid_breakpoints(n, subdivisions);
    const int N = static_cast<int>(xs.size());
    struct Face {
        Vec3 o, a1, a2;
    };
    const double s = n;
    const Vec3 X = Vec3::UnitX(), Y = Vec3::UnitY(), Z = Vec3::UnitZ(), O = Vec3::Zero();
    // a1 x a2 points outward
    const Face faces[6] = {{O, Y, X}, {s * Z, X, Y}, {O, Z, Y}, {s * X, Y, Z}, {O, X, Z}, {s * Y, Z, X}};
    std::map<std::array<long long, 3>, int> index;
    std::vector<Vec3> verts;
    auto vid = [&](const Vec3& p) {
        const std::array<long long, 3> key{std::llround(p.x() * 1e6), std::llround(p.y() * 1e6), std::llround(p.z() * 1e6)};
        auto [it, fresh] = index.emplace(key, static_cast<int>(verts.size()));
        if (fresh) verts.push_back(p);
        return it->second;
    };
    std::vector<std::array<int, 3>> tris;
    std::vector<Vec2> uv;
    for (const auto& f : faces) {
        auto P = [&](int i, int j) { return vid(f.o + xs[i] * f.a1 + xs[j] * f.a2); };
        auto UV = [&](int i, int j) { return Vec2(xs[i], xs[j]); };
        for (int j = 0; j + 1 < N; j++) {
            for (int i = 0; i + 1 < N; i++) {
                tris.push_back({P(i, j), P(i + 1, j), P(i, j + 1)});
                uv.insert(uv.end(), {UV(i, j), UV(i + 1, j), UV(i, j + 1)});
                tris.push_back({P(i + 1, j), P(i + 1, j + 1), P(i, j + 1)});
                uv.insert(uv.end(), {UV(i + 1, j), UV(i + 1, j + 1), UV(i, j + 1)});
            }
        }
    }
    Generated g{TriangleMesh(std::move(verts), std::move(tris)), {}, {}};
    g.map.uv = std::move(uv);
    g.truth.quads = 6 * n * n;
    g.truth.vertices = 6 * n * n + 2;
    g.truth.interior_valences[3] = 8;
    if (n > 1) g.truth.interior_valences[4] = 6 * n * n - 6;
    g.truth.index_quarters = 8;
    g.truth.euler = 2;
    return g;
}

}  // namespace gpq

#include "gpq/oracle.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "gpq/error.h"

namespace gpq {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Sutherland-Hodgman against one axis-aligned half-plane: sign*(p[axis] - bound) >= 0.
std::vector<Vec2> clip_half(const std::vector<Vec2>& poly, int axis, double bound, double sign) {
    std::vector<Vec2> out;
    for (size_t i = 0; i < poly.size(); i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        const double fa = sign * (a[axis] - bound), fb = sign * (b[axis] - bound);
        if (fa >= 0) out.push_back(a);
        if ((fa >= 0) != (fb >= 0)) out.push_back(a + (b - a) * (fa / (fa - fb)));
    }
    return out;
}

double clipped_area(const std::array<Vec2, 3>& tri, int i, int j) {
    std::vector<Vec2> poly(tri.begin(), tri.end());
    poly = clip_half(poly, 0, i, 1);
    poly = clip_half(poly, 0, i + 1, -1);
    poly = clip_half(poly, 1, j, 1);
    poly = clip_half(poly, 1, j + 1, -1);
    double a = 0;
    for (size_t k = 0; k < poly.size(); k++) a += cross2(poly[k], poly[(k + 1) % poly.size()]);
    return 0.5 * a;
}

// Length of the part of segment a-b inside cell [i,i+1] x [j,j+1].
double clipped_length(const Vec2& a, const Vec2& b, int i, int j) {
    double s0 = 0, s1 = 1;
    const Vec2 d = b - a;
    const double lo[2] = {double(i), double(j)}, hi[2] = {double(i + 1), double(j + 1)};
    for (int k = 0; k < 2; k++) {
        if (d[k] == 0) {
            if (a[k] < lo[k] || a[k] > hi[k]) return 0;
            continue;
        }
        double t0 = (lo[k] - a[k]) / d[k], t1 = (hi[k] - a[k]) / d[k];
        if (t0 > t1) std::swap(t0, t1);
        s0 = std::max(s0, t0), s1 = std::min(s1, t1);
    }
    return s1 > s0 ? (s1 - s0) * d.norm() : 0;
}

struct UnionFind {
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
    std::vector<int> p;
};

}  // namespace

QuadMesh primal_oracle(const TriangleMesh& mesh, const GPMap& map) {
    for (int t = 0; t < mesh.ntris(); t++)
        if (jacobian_sign(map, t) <= 0) throw OracleInapplicable("triangle " + std::to_string(t) + " is not positive");
    const auto transitions = compute_transitions(mesh, map);
    auto image = [&](int t) { return std::array<Vec2, 3>{map.uv[3 * t], map.uv[3 * t + 1], map.uv[3 * t + 2]}; };

    std::map<std::tuple<int, int, int>, int> piece;
    std::vector<std::tuple<int, int, int>> pieces;
    for (int t = 0; t < mesh.ntris(); t++) {
        const auto tri = image(t);
        const Vec2 lo = tri[0].cwiseMin(tri[1]).cwiseMin(tri[2]), hi = tri[0].cwiseMax(tri[1]).cwiseMax(tri[2]);
        for (int i = int(std::floor(lo.x())); i < int(std::ceil(hi.x())); i++) {
            for (int j = int(std::floor(lo.y())); j < int(std::ceil(hi.y())); j++) {
                if (clipped_area(tri, i, j) <= 1e-10) continue;
                piece[{t, i, j}] = static_cast<int>(pieces.size());
                pieces.emplace_back(t, i, j);
            }
        }
    }

    UnionFind uf(static_cast<int>(pieces.size()));
    for (int e = 0; e < mesh.ncorners(); e++) {
        const int o = mesh.opposite(e);
        if (o == kBoundary || o < e) continue;
        const int t = tri_of(e), u = tri_of(o);
        const Vec2 a = map.uv[e], b = map.uv[next_corner(e)];
        const Vec2 lo = a.cwiseMin(b), hi = a.cwiseMax(b);
        for (int i = int(std::floor(lo.x())) - 1; i <= int(std::floor(hi.x())); i++) {
            for (int j = int(std::floor(lo.y())) - 1; j <= int(std::floor(hi.y())); j++) {
                auto it = piece.find({t, i, j});
                if (it == piece.end() || clipped_length(a, b, i, j) <= 1e-9) continue;
                const Vec2 c = transitions[o].apply(Vec2(i + 0.5, j + 0.5));
                auto jt = piece.find({u, int(std::floor(c.x())), int(std::floor(c.y()))});
                if (jt != piece.end()) uf.unite(it->second, jt->second);
            }
        }
    }

    Vec3 blo = Vec3::Constant(1e300), bhi = -blo;
    for (const auto& v : mesh.vertices) blo = blo.cwiseMin(v), bhi = bhi.cwiseMax(v);
    const double tol = 1e-7 * std::max(1.0, (bhi - blo).norm());
    std::map<std::array<long long, 3>, int> grid;
    QuadMesh qm;
    auto vertex_id = [&](const Vec3& p) {
        const std::array<long long, 3> key{std::llround(p.x() / tol), std::llround(p.y() / tol), std::llround(p.z() / tol)};
        for (int dx = -1; dx <= 1; dx++)
            for (int dy = -1; dy <= 1; dy++)
                for (int dz = -1; dz <= 1; dz++) {
                    auto it = grid.find({key[0] + dx, key[1] + dy, key[2] + dz});
                    if (it != grid.end()) return it->second;
                }
        grid[key] = qm.nverts();
        qm.vertices.push_back(p);
        return qm.nverts() - 1;
    };

    std::map<int, std::set<int>> quad_verts;
    std::map<int, Vec3> quad_normal;
    for (int k = 0; k < static_cast<int>(pieces.size()); k++) {
        const auto [t, i, j] = pieces[k];
        const auto tri = image(t);
        const double det = cross2(tri[1] - tri[0], tri[2] - tri[0]);
        const int root = uf.find(k);
        for (const Vec2& p : {Vec2(i, j), Vec2(i + 1, j), Vec2(i + 1, j + 1), Vec2(i, j + 1)}) {
            Vec3 l(cross2(tri[1] - p, tri[2] - p) / det, cross2(tri[2] - p, tri[0] - p) / det, 0);
            l.z() = 1 - l.x() - l.y();
            if (l.minCoeff() < -1e-12) continue;
            l = l.cwiseMax(0.0);
            l /= l.sum();
            quad_verts[root].insert(vertex_id(mesh.point(t, l)));
        }
        const auto& tr = mesh.triangles[t];
        const Vec3 n = (mesh.vertices[tr[1]] - mesh.vertices[tr[0]]).cross(mesh.vertices[tr[2]] - mesh.vertices[tr[0]]);
        quad_normal.try_emplace(root, Vec3::Zero()).first->second += n;
    }

    for (const auto& [root, vs] : quad_verts) {
        if (vs.size() != 4) throw OracleInapplicable("a unit cell is not closed inside the domain");
        const std::vector<int> v(vs.begin(), vs.end());
        const std::array<std::array<int, 4>, 3> orders{{{v[0], v[1], v[2], v[3]}, {v[0], v[1], v[3], v[2]}, {v[0], v[2], v[1], v[3]}}};
        double best = 1e300;
        std::array<int, 4> q{};
        for (const auto& ord : orders) {
            double per = 0;
            for (int m = 0; m < 4; m++) per += (qm.vertices[ord[m]] - qm.vertices[ord[(m + 1) % 4]]).norm();
            if (per < best) best = per, q = ord;
        }
        const Vec3 nq = (qm.vertices[q[2]] - qm.vertices[q[0]]).cross(qm.vertices[q[3]] - qm.vertices[q[1]]);
        if (nq.dot(quad_normal[root]) < 0) std::swap(q[1], q[3]);
        qm.quads.push_back(q);
    }
    build_quad_adjacency(qm);
    return qm;
}

}  // namespace gpq

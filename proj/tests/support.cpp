#include <array>
#include <algorithm>
#include <limits>
#include "support.h"

#include <chrono>
#include <deque>
#include <set>

#include "gpq/error.h"

namespace gpq::test {

int tangle(DualGraph& g, int x, int turn) {
    DualNode rev = g.nodes[x];
    rev.reverted = true;
    const int b = g.add_node(rev);
    const int x2 = g.add_node(g.nodes[x]);
    for (int i : {0, 1}) {
        const int ext = g.opposite[port_of(x, turn + i)];
        if (ext >= 0) {
            g.unlink(ext);
            g.link(ext, port_of(x2, turn + i));
        }
        g.link(port_of(x, turn + i), port_of(b, turn + i));
        g.link(port_of(b, turn + i + 2), port_of(x2, turn + i + 2));
    }
    return b;
}

namespace {

std::vector<std::set<int>> class_adjacency(const DualGraph& g, const VertexClasses& vc) {
    std::vector<std::set<int>> adj(vc.count());
    for (int n = 0; n < g.nnodes(); n++) {
        if (!g.nodes[n].alive) continue;
        for (int d = 0; d < 4; d++) {
            const int u = vc.of_corner[corner_of(n, d - 1)], v = vc.of_corner[corner_of(n, d)];
            if (u != v) adj[u].insert(v), adj[v].insert(u);
        }
    }
    return adj;
}

}  // namespace

int class_distance(const DualGraph& g, int corner_a, int corner_b) {
    const auto vc = vertex_classes(g);
    const auto adj = class_adjacency(g, vc);
    const int s = vc.of_corner[corner_a], t = vc.of_corner[corner_b];
    std::vector<int> dist(vc.count(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adj[u])
            if (dist[v] < 0) dist[v] = dist[u] + 1, queue.push_back(v);
    }
    return dist[t];
}

int unique_class(const DualGraph& g, int corners) {
    const auto vc = vertex_classes(g);
    int found = -1, count = 0;
    for (int k = 0; k < vc.count(); k++)
        if (!vc.boundary[k] && vc.corners[k] == corners) found = vc.rep[k], count++;
    return count == 1 ? found : -1;
}

bool homogeneous_components(const DualGraph& g) {
    for (const auto& comp : connected_components(g))
        for (int n : comp)
            if (g.nodes[n].reverted != g.nodes[comp.front()].reverted) return false;
    return true;
}

int remove_all_pleats(DualGraph& g) {
    int removed = 0;
    for (auto pleats = detect_pleats(g); !pleats.empty(); pleats = detect_pleats(g)) {
        remove_pleat(g, pleats.front());
        removed++;
    }
    return removed;
}

std::map<int, int> irregular_classes(const DualGraph& g) {
    const auto vc = vertex_classes(g);
    std::map<int, int> out;
    for (int k = 0; k < vc.count(); k++)
        if (!vc.boundary[k] && vc.corners[k] != 4) out[vc.corners[k]]++;
    return out;
}

namespace {

// Saddle lift across orbit edges i and i+4 of the class holding `corner`.
bool lift_across(DualGraph& g, int corner, int i) {
    const Orbit o = vertex_orbit(g, corner);
    const int m = static_cast<int>(o.edges.size());
    const OrbitEdge& a = o.edges[i % m];
    const OrbitEdge& b = o.edges[(i + 4) % m];
    try {
        op2_saddle_lift(g, {a.before, a.after}, {b.before, b.after});
    } catch (const Error&) {
        return false;
    }
    return true;
}

}  // namespace

DualGraph fairing_pair(int distance) {
    ExtractConfig cfg;
    cfg.fairing = false;
    const Generated cone = gen_cone(-3, 16);
    DualGraph g = extract_quads(cone.mesh, cone.map, cfg).graph;

    const int seven = unique_class(g, 7);
    if (seven < 0) throw PreconditionFailed("cone has no single valence-7 vertex");
    bool split = false;
    for (int i = 0; i < 7 && !split; i++) {
        DualGraph h = g;
        if (lift_across(h, seven, i) && unique_class(h, 3) >= 0 && unique_class(h, 8) >= 0) g = h, split = true;
    }
    if (!split) throw PreconditionFailed("valence-7 vertex does not split into 3 + 8");

    // walk the valence-8 vertex away, one saddle lift per step
    for (int guard = 0; guard < 64; guard++) {
        const int d = class_distance(g, unique_class(g, 3), unique_class(g, 8));
        if (d == distance) return g;
        if (d > distance) break;
        DualGraph best;
        int best_d = d;
        for (int i = 0; i < 8; i++) {
            DualGraph h = g;
            if (!lift_across(h, unique_class(g, 8), i)) continue;
            const int s = unique_class(h, 3), t = unique_class(h, 8);
            if (s < 0 || t < 0 || irregular_classes(h).size() != 2) continue;
            const int hd = class_distance(h, s, t);
            if (hd > best_d) best = h, best_d = hd;
        }
        if (best_d == d) break;
        g = best;
    }
    throw PreconditionFailed("cannot place the pair " + std::to_string(distance) + " edges apart");
}

std::vector<Case> invariant_corpus() {
    std::vector<Case> out;
    for (int n : {1, 4, 8}) out.push_back({"identity " + std::to_string(n), [n] { return gen_identity_square(n); }});
    for (std::uint64_t s = 0; s < 30; s++) {
        const int n = 3 + static_cast<int>(s % 4);
        out.push_back({"warped seed " + std::to_string(s), [n, s] { return gen_warped_identity(n, s); }});
    }
    for (std::uint64_t s = 0; s < 30; s++) {
        const double amp = 0.1 + 0.01 * static_cast<double>(s);
        out.push_back({"rotated noise seed " + std::to_string(s), [s, amp] { return gen_rotated_noise(6, s, amp); }});
    }
    for (std::uint64_t s = 0; s < 16; s++) {
        const int n = s % 2 ? 6 : 4;
        out.push_back({"collapse seed " + std::to_string(s), [n, s] { return gen_collapse(n, 1e-4, s); }});
    }
    for (int n : {3, 4, 5, 6}) out.push_back({"torus " + std::to_string(n), [n] { return gen_torus(n); }});
    for (int n : {2, 3, 4}) out.push_back({"cube " + std::to_string(n), [n] { return gen_cube(n); }});
    for (int q : {1, 0, -1, -2, -4, -5})
        for (bool collar : {false, true})
            out.push_back({"cone " + std::to_string(q) + (collar ? " collar" : ""), [q, collar] {
                               return gen_cone(q, 8, collar);
                           }});
    for (bool lifted : {false, true}) out.push_back({"saddle lift", [lifted] { return gen_saddle_lift(lifted); }});
    for (bool sep : {false, true})
        out.push_back({"two singularities", [sep] { return gen_unseparated_singularities(sep); }});
    out.push_back({"layer lift failure", [] { return gen_multiboundary_failure(); }});
    return out;
}

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double matched_gap(const QuadMesh& a, const QuadMesh& b) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.nverts() != b.nverts() || a.nquads() != b.nquads()) return inf;
    std::vector<int> to(a.nverts());
    std::vector<char> hit(b.nverts(), 0);
    double worst = 0;
    for (int v = 0; v < a.nverts(); v++) {
        double best = inf;
        for (int w = 0; w < b.nverts(); w++) {
            const double d = (a.vertices[v] - b.vertices[w]).norm();
            if (d < best) best = d, to[v] = w;
        }
        if (hit[to[v]]++) return inf;
        worst = std::max(worst, best);
    }
    const auto canon = [](std::array<int, 4> f) {
        std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
        return f;
    };
    std::set<std::array<int, 4>> faces;
    for (const auto& f : b.quads) faces.insert(canon(f));
    for (const auto& f : a.quads)
        if (!faces.count(canon({to[f[0]], to[f[1]], to[f[2]], to[f[3]]}))) return inf;
    return worst;
}

}  // namespace gpq::test

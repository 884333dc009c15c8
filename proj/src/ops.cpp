#include "gpq/ops.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "gpq/error.h"

namespace gpq {

namespace {

bool is_pleat(const DualGraph& g, int p) {
    const int q = g.opposite[p];
    if (q < 0) return false;
    const DualNode& a = g.nodes[node_of(p)];
    const DualNode& b = g.nodes[node_of(q)];
    return a.alive && b.alive && a.reverted != b.reverted;
}

struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> parent;
};

int mod4(int x) { return ((x % 4) + 4) % 4; }

}  // namespace

std::vector<Pleat> detect_pleats(const DualGraph& g) {
    std::vector<Pleat> out;
    for (int p = 0; p < g.nports(); p++)
        if (is_pleat(g, p) && !g.nodes[node_of(p)].reverted) out.push_back({p, g.opposite[p]});
    return out;
}

void remove_pleat(DualGraph& g, const Pleat& pleat) {
    const int p = pleat.normal, q = pleat.reverted;
    if (p < 0 || q < 0 || p >= g.nports() || q >= g.nports() || g.opposite[p] != q || !is_pleat(g, p) ||
        g.nodes[node_of(p)].reverted)
        throw IsolationFailed("stale pleat handle");

    const int A = node_of(p), B = node_of(q);
    const int a = dir_of(p), b = dir_of(q);
    // ports of A and B facing the same side of the pleat correspond to each other
    auto through = [&](int port) {
        const int i = node_of(port) == A ? dir_of(port) - a : dir_of(port) - b;
        return node_of(port) == A ? port_of(B, b + i) : port_of(A, a + i);
    };
    auto internal = [&](int port) { return port >= 0 && (node_of(port) == A || node_of(port) == B); };

    std::vector<int> saved(8);
    for (int i = 0; i < 4; i++) {
        saved[i] = g.opposite[port_of(A, i)];
        saved[4 + i] = g.opposite[port_of(B, i)];
    }
    auto saved_opp = [&](int port) { return saved[(node_of(port) == A ? 0 : 4) + dir_of(port)]; };

    std::vector<std::pair<int, int>> relink;
    std::set<int> done;
    for (int k = 1; k < 4; k++) {
        for (int s : {port_of(A, a + k), port_of(B, b + k)}) {
            const int x = saved_opp(s);
            if (x < 0 || internal(x) || done.count(x)) continue;
            int cur = s, end = -1;
            for (int guard = 0; guard < 8; guard++) {
                const int y = saved_opp(through(cur));
                if (y < 0) break;
                if (!internal(y)) {
                    end = y;
                    break;
                }
                cur = y;
            }
            done.insert(x);
            if (end >= 0) done.insert(end);
            relink.push_back({x, end});
        }
    }
    g.remove_node(A);
    g.remove_node(B);
    for (auto [x, y] : relink)
        if (y >= 0 && x != y) g.link(x, y);
}

std::vector<std::vector<int>> connected_components(const DualGraph& g) {
    std::vector<int> comp(g.nnodes(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.nnodes(); s++) {
        if (!g.nodes[s].alive || comp[s] >= 0) continue;
        out.emplace_back();
        std::deque<int> queue{s};
        comp[s] = static_cast<int>(out.size()) - 1;
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            out.back().push_back(n);
            for (int d = 0; d < 4; d++) {
                const int q = g.opposite[port_of(n, d)];
                if (q < 0 || comp[node_of(q)] >= 0) continue;
                comp[node_of(q)] = comp[s];
                queue.push_back(node_of(q));
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

UntangleResult untangle_all(DualGraph& g) {
    UntangleResult res;
    for (bool found = true; found;) {
        found = false;
        for (int p = 0; p < g.nports(); p++) {
            if (!is_pleat(g, p)) continue;
            const int q = g.opposite[p];
            if (g.nodes[node_of(p)].reverted) remove_pleat(g, {q, p});
            else remove_pleat(g, {p, q});
            res.removed_pairs++;
            found = true;
        }
    }
    for (const auto& comp : connected_components(g)) {
        const bool all_reverted = std::all_of(comp.begin(), comp.end(), [&](int n) { return g.nodes[n].reverted; });
        if (!all_reverted) continue;
        for (int n : comp) g.remove_node(n);
        res.dropped_components++;
        res.dropped_nodes += static_cast<int>(comp.size());
    }
    return res;
}

VertexClasses vertex_classes(const DualGraph& g) {
    const int nc = g.nports();
    UnionFind uf(nc);
    for (int n = 0; n < g.nnodes(); n++) {
        if (!g.nodes[n].alive) continue;
        for (int d = 0; d < 4; d++) {
            const int q = g.opposite[port_of(n, d + 1)];
            if (q >= 0) uf.unite(corner_of(n, d), corner_of(node_of(q), dir_of(q)));
        }
    }
    VertexClasses vc;
    vc.of_corner.assign(nc, -1);
    std::vector<int> id(nc, -1);
    for (int c = 0; c < nc; c++) {
        if (!g.nodes[c / 4].alive) continue;
        const int r = uf.find(c);
        if (id[r] < 0) {
            id[r] = vc.count();
            vc.corners.push_back(0);
            vc.boundary.push_back(false);
            vc.rep.push_back(c);
        }
        const int k = id[r];
        vc.of_corner[c] = k;
        vc.corners[k]++;
        const int n = c / 4, d = c % 4;
        if (g.opposite[port_of(n, d)] < 0 || g.opposite[port_of(n, d + 1)] < 0) vc.boundary[k] = true;
    }
    return vc;
}

std::map<int, int> quad_vertex_valences(const DualGraph& g) {
    const auto vc = vertex_classes(g);
    std::map<int, int> out;
    for (int k = 0; k < vc.count(); k++) out[k] = vc.valence(k);
    return out;
}

Orbit vertex_orbit(const DualGraph& g, int corner) {
    Orbit orb;
    const int limit = g.nports() + 1;
    int start = corner;
    for (int guard = 0; guard < limit; guard++) {
        const int q = g.opposite[port_of(start / 4, start % 4)];
        if (q < 0) {
            orb.closed = false;
            break;
        }
        start = corner_of(node_of(q), dir_of(q) - 1);
        if (start == corner) break;
    }
    if (orb.closed) start = corner;

    int c = start, acc = 0;
    for (int guard = 0; guard < limit; guard++) {
        const int n = c / 4, d = c % 4;
        orb.corners.push_back(c);
        const int p = port_of(n, d + 1);
        const int q = g.opposite[p];
        orb.edges.push_back({p, q, mod4(d + 2 - acc)});
        if (q < 0) {
            orb.closed = false;
            break;
        }
        acc += (dir_of(q) + 2) - (d + 1);
        c = corner_of(node_of(q), dir_of(q));
        if (c == start) break;
    }
    return orb;
}

namespace {

int find_edge(const Orbit& orb, PortPair e) {
    for (int i = 0; i < static_cast<int>(orb.edges.size()); i++) {
        const auto& oe = orb.edges[i];
        if ((oe.before == e.first && oe.after == e.second) || (oe.before == e.second && oe.after == e.first)) return i;
    }
    return -1;
}

void swap_edges(DualGraph& g, const OrbitEdge& a, const OrbitEdge& b) {
    g.unlink(a.before);
    g.unlink(b.before);
    g.link(a.before, b.after);
    g.link(b.before, a.after);
}

}  // namespace

void op2_saddle_lift(DualGraph& g, PortPair a, PortPair b) {
    auto valid = [&](PortPair e) {
        return e.first >= 0 && e.first < g.nports() && g.opposite[e.first] == e.second && e.second >= 0;
    };
    if (!valid(a) || !valid(b)) throw PreconditionFailed("saddle lift needs two linked port pairs");
    if (std::min(a.first, a.second) == std::min(b.first, b.second)) throw PreconditionFailed("saddle lift needs two distinct pairs");

    std::string reason = "pairs do not bound a common vertex chart";
    for (int port : {a.first, a.second}) {
        for (int c : {corner_of(node_of(port), dir_of(port) - 1), corner_of(node_of(port), dir_of(port))}) {
            const Orbit orb = vertex_orbit(g, c);
            const int i = find_edge(orb, a), j = find_edge(orb, b);
            if (i < 0 || j < 0) continue;
            if (orb.edges[i].label != orb.edges[j].label) {
                reason = "pairs lie on isos of different coordinate or value";
                continue;
            }
            swap_edges(g, orb.edges[i], orb.edges[j]);
            return;
        }
    }
    throw PreconditionFailed(reason);
}

int interior_index_quarters(const DualGraph& g) {
    const auto vc = vertex_classes(g);
    int q = 0;
    for (int k = 0; k < vc.count(); k++)
        if (!vc.boundary[k]) q += 4 - vc.corners[k];
    return q;
}

namespace {

struct PathCandidate {
    std::vector<int> classes;  // source first, target last
};

// Moves the target along the path one saddle lift at a time until it merges
// with the source. Returns the merged valence, or -1 when a lift is not admissible.
int resolve_path(DualGraph& g, const std::vector<int>& path_corners) {
    int x_corner = path_corners.back();
    int idx = static_cast<int>(path_corners.size()) - 2;
    for (int guard = 0; guard < 4 * static_cast<int>(path_corners.size()) + 4; guard++) {
        const auto vc = vertex_classes(g);
        const int X = vc.of_corner[x_corner];
        while (idx >= 0 && vc.of_corner[path_corners[idx]] == X) idx--;
        if (idx < 0) return vc.valence(X);
        const int P = vc.of_corner[path_corners[idx]];
        const Orbit orb = vertex_orbit(g, x_corner);
        const int m = static_cast<int>(orb.edges.size());
        if (!orb.closed || m <= 4) return -1;
        auto other = [&](int e) {
            const int c = orb.corners[e];
            return vc.of_corner[corner_of(c / 4, c % 4 + 1)];
        };
        int i = -1;
        for (int e = 0; e < m && i < 0; e++)
            if (other(e) == P) i = e;
        if (i < 0) return -1;
        int j = -1;
        for (int cand : {(i + 4) % m, ((i - 4) % m + m) % m}) {
            const int W = other(cand);
            if (cand == i || W == X || W == P || orb.edges[cand].label != orb.edges[i].label) continue;
            j = cand;
            break;
        }
        if (j < 0) return -1;
        swap_edges(g, orb.edges[i], orb.edges[j]);
        x_corner = path_corners[idx];
        if (idx == 0) return vertex_classes(g).valence(vertex_classes(g).of_corner[x_corner]);
    }
    return -1;
}

}  // namespace

std::vector<FairingMerge> index_fairing(DualGraph& g, const FairingConfig& config) {
    std::vector<FairingMerge> merges;
    if (!config.enabled) return merges;
    if (config.path_threshold < 1) throw InvalidParameter("fairing threshold must be >= 1");

    for (int stage : {1, 2, 3}) {
        std::set<std::pair<int, int>> blocked;  // (source corner, target corner)
        for (int round = 0; round < 4 * g.nnodes() + 4; round++) {
            const auto vc = vertex_classes(g);
            std::vector<std::set<int>> adj(vc.count());
            for (int n = 0; n < g.nnodes(); n++) {
                if (!g.nodes[n].alive) continue;
                for (int d = 0; d < 4; d++) {
                    const int u = vc.of_corner[corner_of(n, d - 1)], v = vc.of_corner[corner_of(n, d)];
                    if (u != v) adj[u].insert(v), adj[v].insert(u);
                }
            }
            std::vector<int> best_path;
            for (int s = 0; s < vc.count(); s++) {
                if (vc.boundary[s] || vc.corners[s] != stage) continue;
                std::vector<int> dist(vc.count(), -1), parent(vc.count(), -1);
                std::deque<int> queue{s};
                dist[s] = 0;
                int found = -1;
                while (!queue.empty() && found < 0) {
                    const int u = queue.front();
                    queue.pop_front();
                    if (dist[u] >= config.path_threshold) continue;
                    for (int v : adj[u]) {
                        if (dist[v] >= 0) continue;
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        if (!vc.boundary[v] && vc.corners[v] >= 7 && !blocked.count({vc.rep[s], vc.rep[v]})) {
                            if (found < 0 || vc.rep[v] < vc.rep[found]) found = v;
                        }
                        queue.push_back(v);
                    }
                    // finish the current BFS layer to break ties by id
                    if (found >= 0) {
                        for (int w : queue)
                            if (dist[w] == dist[found] && !vc.boundary[w] && vc.corners[w] >= 7 &&
                                !blocked.count({vc.rep[s], vc.rep[w]}) && vc.rep[w] < vc.rep[found])
                                found = w;
                    }
                }
                if (found < 0) continue;
                std::vector<int> path;
                for (int v = found; v >= 0; v = parent[v]) path.push_back(v);
                std::reverse(path.begin(), path.end());
                if (best_path.empty() || path.size() < best_path.size()) best_path = path;
            }
            if (best_path.empty()) break;

            std::vector<int> corners;
            for (int v : best_path) corners.push_back(vc.rep[v]);
            FairingMerge mg;
            mg.source_valence = vc.valence(best_path.front());
            mg.target_valence = vc.valence(best_path.back());
            mg.path_length = static_cast<int>(best_path.size()) - 1;
            mg.source_corner = corners.front();
            mg.target_corner = corners.back();
            const auto saved = g.opposite;
            const int result = resolve_path(g, corners);
            if (result < 0) {
                g.opposite = saved;
                blocked.insert({corners.front(), corners.back()});
                continue;
            }
            mg.result_valence = result;
            merges.push_back(mg);
        }
    }
    return merges;
}

}  // namespace gpq

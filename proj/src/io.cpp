#include "gpq/io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gpq/error.h"
#include "json.hpp"

namespace gpq {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameter("cannot write " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(path, 0, "cannot open file");
    return f;
}

struct LineReader {
    std::istream& in;
    std::string name;
    int line = 0;
    std::string text;

    bool next() {
        while (std::getline(in, text)) {
            line++;
            if (!text.empty() && text.back() == '\r') text.pop_back();
            const auto p = text.find_first_not_of(" \t");
            if (p == std::string::npos || text[p] == '#') continue;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(name, line, what); }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

double parse_double(const LineReader& r, const std::string& tok) {
    double x = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size()) r.fail("bad number '" + tok + "'");
    return x;
}

int parse_index(const LineReader& r, const std::string& tok, int count, const char* what) {
    int x = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size()) r.fail(std::string("bad ") + what + " index '" + tok + "'");
    if (x < 1 || x > count) r.fail(std::string(what) + " index " + tok + " out of range");
    return x - 1;
}

}  // namespace

void write_gpm(const TriangleMesh& mesh, const GPMap& map, std::ostream& out) {
    out << "gpm 1\n";
    for (const auto& p : mesh.vertices) out << "v " << num(p.x()) << ' ' << num(p.y()) << ' ' << num(p.z()) << '\n';
    for (const auto& t : map.uv) out << "vt " << num(t.x()) << ' ' << num(t.y()) << '\n';
    for (int t = 0; t < mesh.ntris(); t++) {
        out << 'f';
        for (int i = 0; i < 3; i++) out << ' ' << mesh.triangles[t][i] + 1 << '/' << 3 * t + i + 1;
        out << '\n';
    }
}

void write_gpm(const TriangleMesh& mesh, const GPMap& map, const std::string& path) {
    auto f = open_out(path);
    write_gpm(mesh, map, f);
}

GpmData read_gpm(std::istream& in, const std::string& name) {
    LineReader r{in, name, 0, {}};
    if (!r.next() || split_ws(r.text) != std::vector<std::string>{"gpm", "1"}) r.fail("expected header 'gpm 1'");
    std::vector<Vec3> verts;
    std::vector<Vec2> uvs;
    std::vector<std::array<int, 3>> tris;
    std::vector<std::array<int, 3>> tri_uv;
    while (r.next()) {
        const auto tok = split_ws(r.text);
        if (tok[0] == "v") {
            if (tok.size() != 4) r.fail("'v' needs 3 coordinates");
            verts.emplace_back(parse_double(r, tok[1]), parse_double(r, tok[2]), parse_double(r, tok[3]));
        } else if (tok[0] == "vt") {
            if (tok.size() != 3) r.fail("'vt' needs 2 coordinates");
            uvs.emplace_back(parse_double(r, tok[1]), parse_double(r, tok[2]));
        } else if (tok[0] == "f") {
            if (tok.size() != 4) r.fail("'f' needs exactly 3 corners");
            std::array<int, 3> t{}, tu{};
            for (int i = 0; i < 3; i++) {
                const auto& c = tok[i + 1];
                const auto slash = c.find('/');
                if (slash == std::string::npos || slash + 1 >= c.size()) r.fail("corner '" + c + "' has no uv reference");
                t[i] = parse_index(r, c.substr(0, slash), static_cast<int>(verts.size()), "position");
                tu[i] = parse_index(r, c.substr(slash + 1), static_cast<int>(uvs.size()), "uv");
            }
            tris.push_back(t);
            tri_uv.push_back(tu);
        } else {
            r.fail("unknown record '" + tok[0] + "'");
        }
    }
    GpmData d;
    d.map.uv.resize(3 * tris.size());
    for (size_t t = 0; t < tris.size(); t++)
        for (int i = 0; i < 3; i++) d.map.uv[3 * t + i] = uvs[tri_uv[t][i]];
    d.mesh = TriangleMesh(std::move(verts), std::move(tris));
    return d;
}

GpmData read_gpm(const std::string& path) {
    auto f = open_in(path);
    return read_gpm(f, path);
}

void write_quad_obj(const QuadMesh& qm, std::ostream& out) {
    for (int f = 0; f < qm.nquads(); f++) {
        const auto& q = qm.quads[f];
        for (int i = 0; i < 4; i++)
            if (q[i] < 0 || q[i] >= qm.nverts()) throw PreconditionFailed("quad " + std::to_string(f) + " is not a quad");
    }
    for (const auto& p : qm.vertices) out << "v " << num(p.x()) << ' ' << num(p.y()) << ' ' << num(p.z()) << '\n';
    for (const auto& q : qm.quads) out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void write_quad_obj(const QuadMesh& qm, const std::string& path) {
    auto f = open_out(path);
    write_quad_obj(qm, f);
}

QuadMesh read_quad_obj(std::istream& in, const std::string& name) {
    LineReader r{in, name, 0, {}};
    QuadMesh qm;
    while (r.next()) {
        const auto tok = split_ws(r.text);
        if (tok[0] == "v") {
            if (tok.size() < 4) r.fail("'v' needs 3 coordinates");
            qm.vertices.emplace_back(parse_double(r, tok[1]), parse_double(r, tok[2]), parse_double(r, tok[3]));
        } else if (tok[0] == "f") {
            if (tok.size() != 5) r.fail("face is not a quad");
            std::array<int, 4> q{};
            for (int i = 0; i < 4; i++) {
                const auto& c = tok[i + 1];
                q[i] = parse_index(r, c.substr(0, c.find('/')), qm.nverts(), "position");
            }
            qm.quads.push_back(q);
        }
    }
    build_quad_adjacency(qm);
    return qm;
}

QuadMesh read_quad_obj(const std::string& path) {
    auto f = open_in(path);
    return read_quad_obj(f, path);
}

std::string quarters_fraction(int q) {
    if (q == 0) return "0";
    const int g = std::gcd(std::abs(q), 4);
    const int n = q / g, d = 4 / g;
    return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
}

void write_report(const MapReport& rep, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["seamless"] = rep.seamless();
        j["grid_preserving"] = rep.grid_preserving();
        j["foldover_free"] = rep.foldover_free();
        j["accepted"] = rep.accepted();
        j["max_seamless_residual"] = rep.max_seamless_residual;
        j["seamless_tolerance"] = rep.seamless_tolerance;
        j["seamless_violations"] = rep.seamless_violations.size();
        j["non_integer_edges"] = rep.non_integer_edges.size();
        j["reverted_triangles"] = rep.reverted.size();
        j["degenerate_triangles"] = rep.degenerate.size();
        j["undefined_index"] = rep.undefined_index.size();
        j["sog_violations"] = rep.sog_violations.size();
        auto s = nlohmann::ordered_json::array();
        for (const auto& r : rep.singularities)
            s.push_back({{"vertex", r.vertex}, {"index", quarters_fraction(r.quarters)}, {"valence", r.expected_valence()}});
        j["singularities"] = s;
        out << j.dump(2) << '\n';
        return;
    }
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    out << "seamless: " << yes(rep.seamless()) << '\n'
        << "grid_preserving: " << yes(rep.grid_preserving()) << '\n'
        << "foldover_free: " << yes(rep.foldover_free()) << '\n'
        << "accepted: " << yes(rep.accepted()) << '\n'
        << "max_seamless_residual: " << num(rep.max_seamless_residual) << '\n'
        << "seamless_tolerance: " << num(rep.seamless_tolerance) << '\n'
        << "seamless_violations: " << rep.seamless_violations.size() << '\n'
        << "non_integer_edges: " << rep.non_integer_edges.size() << '\n'
        << "reverted_triangles: " << rep.reverted.size() << '\n'
        << "degenerate_triangles: " << rep.degenerate.size() << '\n'
        << "undefined_index: " << rep.undefined_index.size() << '\n'
        << "sog_violations: " << rep.sog_violations.size() << '\n'
        << "singularities: " << rep.singularities.size() << '\n';
    for (const auto& r : rep.singularities)
        out << "singularity: vertex " << r.vertex << " index " << quarters_fraction(r.quarters) << " valence "
            << r.expected_valence() << '\n';
}

void write_report(const MapReport& rep, const std::string& path, ReportFormat format) {
    auto f = open_out(path);
    write_report(rep, f, format);
}

void write_diagnostics(const Diagnostics& d, const QuadMesh& qm, std::ostream& out) {
    out << "sanitize_rounds: " << d.sanitize_rounds << '\n'
        << "perturbed_vertices: " << d.perturbed_vertices << '\n'
        << "edge_splits: " << d.edge_splits << '\n'
        << "nodes: " << d.nodes << '\n'
        << "reverted_nodes: " << d.reverted_nodes << '\n'
        << "boundary_ports: " << d.boundary_ports << '\n'
        << "stalled_ports: " << d.stalled_ports << '\n'
        << "non_mutual_ports: " << d.non_mutual_ports << '\n'
        << "pleats_removed: " << d.untangle.removed_pairs << '\n'
        << "reverted_components_dropped: " << d.untangle.dropped_components << '\n'
        << "reverted_nodes_dropped: " << d.untangle.dropped_nodes << '\n'
        << "reverted_nodes_left: " << d.reverted_nodes_left << '\n'
        << "unmatched_ports: " << d.unmatched_ports << '\n'
        << "fairing_merges: " << d.merges.size() << '\n';
    for (const auto& m : d.merges)
        out << "merge: valence " << m.source_valence << " + " << m.target_valence << " -> " << m.result_valence
            << " path " << m.path_length << '\n';
    out << "placed_exactly: " << d.placement.exact << '\n'
        << "placed_fallback: " << d.placement.fallback << '\n'
        << "placement_disagreements: " << d.placement.disagreeing << '\n'
        << "quads: " << qm.nquads() << '\n'
        << "vertices: " << qm.nverts() << '\n';
    for (const auto& w : d.warnings) out << "warning: " << w << '\n';
}

void write_stats(const QuadMesh& qm, std::ostream& out) {
    out << "vertices: " << qm.nverts() << '\n'
        << "edges: " << qm.edge_count() << '\n'
        << "faces: " << qm.nquads() << '\n'
        << "euler: " << qm.euler_characteristic() << '\n'
        << "boundary_edges: " << qm.boundary_edges() << '\n';
    std::map<int, std::pair<int, int>> hist;  // valence -> (interior, boundary)
    for (int v = 0; v < qm.nverts(); v++) {
        auto& h = hist[qm.valence[v]];
        (qm.boundary[v] ? h.second : h.first)++;
    }
    for (const auto& [val, c] : hist)
        out << "valence " << val << ": " << c.first + c.second << " (interior " << c.first << ", boundary " << c.second
            << ")\n";
}

}  // namespace gpq

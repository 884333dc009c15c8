#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gpq/error.h"
#include "gpq/generators.h"
#include "gpq/io.h"
#include "gpq/svg.h"

namespace {

enum Exit { Ok = 0, Usage = 1, Invalid = 2, Parse = 3, Internal = 4 };

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

// "-5/4", "1/2", "-1" -> quarters
int parse_index_quarters(const std::string& text) {
    const auto slash = text.find('/');
    try {
        size_t used = 0;
        const int num = std::stoi(text.substr(0, slash), &used);
        if (used != text.substr(0, slash).size()) throw std::invalid_argument(text);
        int den = 1;
        if (slash != std::string::npos) {
            den = std::stoi(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1) throw std::invalid_argument(text);
        }
        if (den <= 0 || 4 % den != 0) throw std::invalid_argument(text);
        return num * (4 / den);
    } catch (const std::logic_error&) {
        throw gpq::InvalidParameter("index '" + text + "' is not a multiple of 1/4");
    }
}

int run_validate(const std::string& in, const std::string& report) {
    const auto d = gpq::read_gpm(in);
    const auto rep = gpq::validate(d.mesh, d.map);
    gpq::write_report(rep, std::cout);
    if (!report.empty())
        gpq::write_report(rep, report, ends_with(report, ".json") ? gpq::ReportFormat::Json : gpq::ReportFormat::Text);
    return rep.accepted() ? Ok : Invalid;
}

struct ExtractArgs {
    std::string in, out, diag, svg_prefix;
    gpq::ExtractConfig config;
    bool no_fairing = false;
};

void write_svgs(const std::string& prefix, const gpq::GpmData& input, const gpq::ExtractResult& res) {
    const gpq::SvgScene original{&input.mesh, &input.map, nullptr, nullptr};
    const gpq::SvgScene working{&res.mesh, &res.map, &res.graph, &res.quads};
    try {
        gpq::render_svg(gpq::SvgStage::Map, original, prefix + "map.svg");
        gpq::render_svg(gpq::SvgStage::DualGraph, working, prefix + "dual-graph.svg");
        gpq::render_svg(gpq::SvgStage::Segmentation, working, prefix + "segmentation.svg");
        gpq::render_svg(gpq::SvgStage::QuadMesh, working, prefix + "quad-mesh.svg");
    } catch (const gpq::NotFlat& e) {
        std::cerr << "warning: no svg output: " << e.what() << '\n';
    }
}

int run_extract(ExtractArgs& a) {
    const auto input = gpq::read_gpm(a.in);
    a.config.fairing = !a.no_fairing;
    const auto res = gpq::extract_quads(input.mesh, input.map, a.config);
    gpq::write_quad_obj(res.quads, a.out);
    if (!a.diag.empty()) {
        std::ofstream f(a.diag, std::ios::binary);
        if (!f) throw gpq::InvalidParameter("cannot write " + a.diag);
        gpq::write_diagnostics(res.diag, res.quads, f);
    }
    if (!a.svg_prefix.empty()) write_svgs(a.svg_prefix, input, res);
    std::cout << "quads: " << res.quads.nquads() << "\nvertices: " << res.quads.nverts() << '\n';
    for (const auto& w : res.diag.warnings) std::cerr << "warning: " << w << '\n';
    return Ok;
}

struct GenerateArgs {
    std::string which, out;
    int n = 8, subdivisions = 2, rings = 0, arm = 3;  // rings 0: case default
    std::uint64_t seed = 0;
    double amplitude = 0.3, height = 0.7, jitter = 1e-4;
    std::string index = "-1";
    bool collar = false, lifted = false, separated = false;
};

int run_generate(const GenerateArgs& a) {
    gpq::Generated g;
    const std::string& w = a.which;
    if (w == "identity") g = gpq::gen_identity_square(a.n, a.subdivisions);
    else if (w == "warped") g = gpq::gen_warped_identity(a.n, a.seed, a.amplitude, a.subdivisions);
    else if (w == "collapse") g = gpq::gen_collapse(a.n, a.jitter, a.seed);
    else if (w == "rotated-noise") g = gpq::gen_rotated_noise(a.n, a.seed, a.amplitude, a.subdivisions);
    else if (w == "cone") g = gpq::gen_cone(parse_index_quarters(a.index), a.rings ? a.rings : 8, a.collar);
    else if (w == "saddle-lift") g = gpq::gen_saddle_lift(a.lifted, a.height);
    else if (w == "multisingu") g = gpq::gen_unseparated_singularities(a.separated, a.arm);
    else if (w == "failure") g = gpq::gen_multiboundary_failure(a.rings ? a.rings : 10);
    else if (w == "torus") g = gpq::gen_torus(a.n, a.subdivisions);
    else if (w == "cube") g = gpq::gen_cube(a.n, a.subdivisions);
    else throw gpq::InvalidParameter("unknown case '" + w + "'");
    gpq::write_gpm(g.mesh, g.map, a.out);
    return Ok;
}

int run_stats(const std::string& in) {
    gpq::write_stats(gpq::read_quad_obj(in), std::cout);
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quad mesh extraction from grid preserving maps"};
    app.require_subcommand(1);

    std::string validate_in, validate_report;
    auto* validate = app.add_subcommand("validate", "Check that a map is seamless, grid preserving and foldover free");
    validate->add_option("input", validate_in, "Map in gpm format")->required();
    validate->add_option("--report", validate_report, "Also write the report here (.json for JSON)");

    ExtractArgs ea;
    auto* extract = app.add_subcommand("extract", "Extract a quad mesh");
    extract->add_option("input", ea.in, "Map in gpm format")->required();
    extract->add_option("-o,--output", ea.out, "Quad mesh OBJ")->required();
    extract->add_option("--seed", ea.config.seed, "Seed of the sanitizing perturbation");
    extract->add_option("--perturb", ea.config.perturbation, "Perturbation norm in parameter units");
    extract->add_flag("--no-fairing", ea.no_fairing, "Skip index fairing");
    extract->add_option("--fairing-threshold", ea.config.fairing_threshold, "Longest saddle-lift path to merge along");
    extract->add_option("--diag", ea.diag, "Write diagnostics here");
    extract->add_option("--svg-prefix", ea.svg_prefix, "Write <prefix>{map,dual-graph,segmentation,quad-mesh}.svg");

    GenerateArgs ga;
    auto* generate = app.add_subcommand("generate", "Write a synthetic test map");
    generate->add_option("case", ga.which, "identity|warped|collapse|rotated-noise|cone|saddle-lift|multisingu|failure|torus|cube")
        ->required();
    generate->add_option("-o,--output", ga.out, "Map in gpm format")->required();
    generate->add_option("--n", ga.n, "Grid size");
    generate->add_option("--subdivisions", ga.subdivisions, "Triangles per unit along each axis");
    generate->add_option("--seed", ga.seed);
    generate->add_option("--amplitude", ga.amplitude, "Noise or warp amplitude");
    generate->add_option("--index", ga.index, "Cone index, e.g. -5/4");
    generate->add_option("--rings", ga.rings, "Cone radius in grid units");
    generate->add_flag("--collar", ga.collar, "Surround the cone apex with a reverted collar");
    generate->add_flag("--lifted", ga.lifted, "Saddle-lift variant");
    generate->add_option("--height", ga.height, "Lift height");
    generate->add_flag("--separated", ga.separated, "Keep the two singularities apart");
    generate->add_option("--arm", ga.arm, "Patch size of the two-singularity layout");
    generate->add_option("--jitter", ga.jitter, "Interior jitter of the collapse case");

    std::string stats_in;
    auto* stats = app.add_subcommand("stats", "Print counts and the valence histogram of a quad OBJ");
    stats->add_option("mesh", stats_in, "Quad mesh OBJ")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Usage;
    }

    try {
        if (validate->parsed()) return run_validate(validate_in, validate_report);
        if (extract->parsed()) return run_extract(ea);
        if (generate->parsed()) return run_generate(ga);
        if (stats->parsed()) return run_stats(stats_in);
    } catch (const gpq::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return Parse;
    } catch (const gpq::ValidationFailed& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return Invalid;
    } catch (const gpq::NonManifold& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return Invalid;
    } catch (const gpq::InconsistentOrientation& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return Invalid;
    } catch (const gpq::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return Internal;
    }
    return Usage;
}

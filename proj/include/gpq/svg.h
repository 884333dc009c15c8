#pragma once

#include <iosfwd>
#include <string>

#include "gpq/extract.h"

namespace gpq {

enum class SvgStage { Map, DualGraph, Segmentation, QuadMesh };

/// Whatever a stage needs; unused members may stay null.
struct SvgScene {
    const TriangleMesh* mesh = nullptr;
    const GPMap* map = nullptr;
    const DualGraph* graph = nullptr;
    const QuadMesh* quads = nullptr;
};

/// Draws on the surface, which must lie in the z = 0 plane (NotFlat otherwise).
///   Map           triangles, reverted ones tinted, integer isos
///   DualGraph     node squares coloured by Jacobian sign, links
///   Segmentation  both of the above
///   QuadMesh      quads and vertices coloured by valence
void render_svg(SvgStage stage, const SvgScene& scene, std::ostream& out);
void render_svg(SvgStage stage, const SvgScene& scene, const std::string& path);

SvgStage parse_svg_stage(const std::string& name);
std::string svg_stage_name(SvgStage stage);

}  // namespace gpq

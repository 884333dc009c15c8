#pragma once

#include <iosfwd>
#include <string>

#include "gpq/pipeline.h"

namespace gpq {

struct GpmData {
    TriangleMesh mesh;
    GPMap map;
};

// Wedge-uv text format:
//   gpm 1
//   v x y z
//   vt u v
//   f v/vt v/vt v/vt      (1-based)
// Coordinates use 17 significant digits, so write then read is bit-exact.
void write_gpm(const TriangleMesh& mesh, const GPMap& map, std::ostream& out);
void write_gpm(const TriangleMesh& mesh, const GPMap& map, const std::string& path);
GpmData read_gpm(std::istream& in, const std::string& name = "<stream>");
GpmData read_gpm(const std::string& path);

/// Positions and 4-corner faces. Throws PreconditionFailed on a non-quad face.
void write_quad_obj(const QuadMesh& qm, std::ostream& out);
void write_quad_obj(const QuadMesh& qm, const std::string& path);

/// Reads `v` and `f` records of a quad OBJ; other records are ignored.
QuadMesh read_quad_obj(std::istream& in, const std::string& name = "<stream>");
QuadMesh read_quad_obj(const std::string& path);

enum class ReportFormat { Text, Json };

/// Line-oriented key: value pairs in a fixed order, or the same fields as JSON.
void write_report(const MapReport& rep, std::ostream& out, ReportFormat format = ReportFormat::Text);
void write_report(const MapReport& rep, const std::string& path, ReportFormat format = ReportFormat::Text);

void write_diagnostics(const Diagnostics& d, const QuadMesh& qm, std::ostream& out);

/// V, E, F, Euler characteristic, boundary edges and valence histogram.
void write_stats(const QuadMesh& qm, std::ostream& out);

/// "-5/4", "0", "1/2": an index in quarters as a reduced fraction.
std::string quarters_fraction(int quarters);

}  // namespace gpq

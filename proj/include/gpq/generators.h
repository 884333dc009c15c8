#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gpq/map.h"

namespace gpq {

/// What a correct extraction of a generated input looks like.
/// Negative counts mean "not prescribed".
struct Truth {
    int quads = -1;
    int vertices = -1;
    std::map<int, int> interior_valences;  // valence -> count, irregular vertices only when `regular_elided`
    bool regular_elided = false;           // valence-4 count left out
    int index_quarters = 0;                // total interior index
    int euler = 1;
    std::vector<Transition> transitions;   // ground truth per directed edge, when recorded
    std::string note;
};

struct Generated {
    TriangleMesh mesh;
    GPMap map;
    Truth truth;
};

/// Per-unit breakpoints i + 0.93 k / s: keeps half-integer isos off vertices and diagonals.
std::vector<double> grid_breakpoints(int n, int subdivisions);

/// [0,n]^2 with uv = xy.
Generated gen_identity_square(int n, int subdivisions = 2);

/// Identity plus a seeded smooth displacement vanishing on the boundary; det > 0 is checked.
Generated gen_warped_identity(int n, std::uint64_t seed, double amplitude = 0.25, int subdivisions = 2);

/// Uniform grid, boundary ring at identity, interior uv at (0,0) up to a seeded jitter.
Generated gen_collapse(int n, double jitter = 1e-4, std::uint64_t seed = 0);

/// Right half of the square seen through a quarter-turn chart, plus uniform per-vertex noise.
Generated gen_rotated_noise(int n, std::uint64_t seed, double amplitude, int subdivisions = 2);

/// Disk fan with a cone of index quarters/4 (quarters <= 1) at the centre, mapped to (0,0).
/// The collar variant folds a ring of triangles back over the inner disk.
Generated gen_cone(int quarters, int rings = 8, bool reverted_collar = false);

/// Index -1 saddle; the lifted variant raises u near the centre past the next half-integer.
Generated gen_saddle_lift(bool lifted, double height = 0.7);

/// Two index -1/4 cones joined by a strip of map width 1 (separated) or 0 (same chart).
Generated gen_unseparated_singularities(bool separated = false, int arm = 3);

/// Index -1 saddle with a unit layer lift per coordinate around it. The lift
/// leaves closed iso loops no other iso crosses; dropping them moves the
/// singularity, so the pre-lift mesh (gen_cone(-4, rings)) is not recovered.
Generated gen_multiboundary_failure(int rings = 10);

/// Flat torus n x n embedded in 3D, translations only.
Generated gen_torus(int n, int subdivisions = 2);

/// Surface of [0,n]^3 with one chart per face; eight index 1/4 corners.
Generated gen_cube(int n, int subdivisions = 2);

}  // namespace gpq

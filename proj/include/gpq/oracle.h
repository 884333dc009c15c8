#pragma once

#include "gpq/extract.h"

namespace gpq {

/// Reference extraction by the primal route: pieces of unit cells clipped to
/// triangle images are glued across edges, each glued cell is a quad and each
/// integer point preimage a vertex. Only valid on det+ maps with every cell
/// fully inside the domain. Throws OracleInapplicable otherwise.
QuadMesh primal_oracle(const TriangleMesh& mesh, const GPMap& map);

}  // namespace gpq

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpq/generators.h"
#include "gpq/pipeline.h"

namespace gpq::test {

/// Inverse of pleat removal: node x is folded into x, a reverted node and a
/// new normal node, as if one of its isos made an S-fold across the other.
/// x keeps ports turn+2 and turn+3; the new normal node takes turn and turn+1.
/// Returns the reverted node.
int tangle(DualGraph& g, int x, int turn = 0);

/// BFS distance between the vertex classes of two corners along quad edges; -1 if disconnected.
int class_distance(const DualGraph& g, int corner_a, int corner_b);

/// Representative corner of the only closed class with `corners` corners, or -1.
int unique_class(const DualGraph& g, int corners);

/// Every connected component is entirely reverted or entirely normal.
bool homogeneous_components(const DualGraph& g);

/// Removes pleats one at a time like untangle_all, but keeps reverted leftovers.
int remove_all_pleats(DualGraph& g);

/// Closed-class valences other than 4, as valence -> count.
std::map<int, int> irregular_classes(const DualGraph& g);

/// A valence-8 / valence-3 pair `distance` quad edges apart, built from a
/// valence-7 cone by saddle lifts. Throws PreconditionFailed when the
/// construction cannot reach the distance.
DualGraph fairing_pair(int distance);

/// Worst vertex gap when each vertex of a goes to the nearest vertex of b.
/// Infinite unless that map is a bijection carrying quads onto quads.
double matched_gap(const QuadMesh& a, const QuadMesh& b);

struct Case {
    std::string name;
    std::function<Generated()> make;
};

/// Seeded generator corpus used by the invariant sweeps.
std::vector<Case> invariant_corpus();

/// Wall-clock seconds taken by f.
double seconds(const std::function<void()>& f);

}  // namespace gpq::test

#pragma once

#include "netstab/structures.hpp"

namespace netstab {

// Per-replication discrepancies between a true characteristic and its sample
// counterpart. Averaging over replications estimates the expected values.

/// Area between the two histogram step curves: sum |c_b - c'_b| * width_b.
double histogram_divergence(const EdgeWeightHistogram& truth, const EdgeWeightHistogram& estimate);

/// sum_d |k_d - k'_d| over degrees 0..N-1.
long degree_divergence(const DegreeDistribution& truth, const DegreeDistribution& estimate);

/// Size of the symmetric difference of the two member sets.
long vertex_set_divergence(const VertexSet& truth, const VertexSet& estimate);

/// 1 when the sorted degree sequences agree, else 0. Unlike the others this
/// is a match indicator: higher means better.
int topology_match(const TreeTopology& truth, const TreeTopology& estimate);

}  // namespace netstab

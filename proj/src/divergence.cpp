#include "netstab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "netstab/error.hpp"

namespace netstab {

double histogram_divergence(const EdgeWeightHistogram& truth, const EdgeWeightHistogram& estimate) {
  if (truth.bin_edges != estimate.bin_edges || truth.counts.size() + 1 != truth.bin_edges.size() ||
      estimate.counts.size() != truth.counts.size()) {
    throw BinMismatchError("histograms have different bins");
  }
  double area = 0.0;
  for (std::size_t b = 0; b < truth.counts.size(); ++b) {
    const double width = truth.bin_edges[b + 1] - truth.bin_edges[b];
    area += static_cast<double>(std::labs(truth.counts[b] - estimate.counts[b])) * width;
  }
  return area;
}

long degree_divergence(const DegreeDistribution& truth, const DegreeDistribution& estimate) {
  if (truth.counts.size() != estimate.counts.size()) {
    throw ShapeError("degree distributions over " + std::to_string(truth.counts.size()) + " and " +
                     std::to_string(estimate.counts.size()) + " vertices");
  }
  long total = 0;
  for (std::size_t d = 0; d < truth.counts.size(); ++d) total += std::labs(truth.counts[d] - estimate.counts[d]);
  return total;
}

long vertex_set_divergence(const VertexSet& truth, const VertexSet& estimate) {
  if (truth.kind != estimate.kind) throw KindError("cannot compare a clique with an independent set");
  std::vector<int> a = truth.members;
  std::vector<int> b = estimate.members;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return static_cast<long>(diff.size());
}

int topology_match(const TreeTopology& truth, const TreeTopology& estimate) {
  if (truth.degrees.size() != estimate.degrees.size()) {
    throw ShapeError("tree topologies over different vertex counts");
  }
  return truth.degrees == estimate.degrees ? 1 : 0;
}

}  // namespace netstab

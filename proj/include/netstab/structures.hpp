#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "netstab/measures.hpp"

namespace netstab {

using Edge = std::pair<int, int>;

/// Simple undirected graph from thresholding a dependence matrix. Edges are
/// stored as (i, j) with i < j in lexicographic order.
class MarketGraph {
 public:
  /// Throws ShapeError on self-loops, duplicate edges or out-of-range indices.
  MarketGraph(int vertices, std::vector<Edge> edges, double threshold = 0.0);

  int vertices() const noexcept { return vertices_; }
  double threshold() const noexcept { return threshold_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(int i, int j) const;
  int degree(int v) const;
  /// Row `v` of the adjacency bitset, 64 vertices per word.
  const std::uint64_t* adjacency_row(int v) const { return adjacency_.data() + static_cast<std::size_t>(v) * words_; }
  std::size_t words() const noexcept { return words_; }

  MarketGraph complement() const;

 private:
  int vertices_;
  double threshold_;
  std::size_t words_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adjacency_;
};

/// Edge (i, j) iff w(i, j) > threshold.
MarketGraph market_graph(const DependenceMatrix& w, double threshold);

/// Threshold to apply to a network of `kind` given a threshold stated on the
/// Pearson scale. Sign networks get 1/2 + arcsin(t)/pi unless `raw`.
double threshold_for(MeasureKind kind, double pearson_threshold, bool raw = false);

/// counts[d] = number of vertices of degree d; length N.
struct DegreeDistribution {
  std::vector<int> counts;
  bool operator==(const DegreeDistribution&) const = default;
};

DegreeDistribution degree_distribution(const MarketGraph& g);

struct EdgeWeightHistogram {
  std::vector<double> bin_edges;
  std::vector<long> counts;
};

/// Equal-width edges lower, lower + width, ..., upper.
std::vector<double> uniform_bins(double lower, double upper, double width);

/// Width-0.1 bins over [-1, 1] for Pearson and [0, 1] for sign networks.
std::vector<double> default_bins(MeasureKind kind, double width = 0.1);

/// Upper-triangle weights into right-open bins; the last bin is closed.
EdgeWeightHistogram edge_histogram(const DependenceMatrix& w, const std::vector<double>& bin_edges);

enum class VertexSetKind { Clique, IndependentSet };

struct VertexSet {
  std::vector<int> members;
  VertexSetKind kind;
};

/// Exact maximum clique; among maximum cliques the lexicographically smallest
/// sorted member list.
VertexSet max_clique(const MarketGraph& g);

/// Maximum clique of the complement graph, same tie rule.
VertexSet max_independent_set(const MarketGraph& g);

/// Size of the largest clique; shares the branch-and-bound with max_clique.
int clique_number(const MarketGraph& g);

struct WeightedEdge {
  int u;
  int v;
  double weight;
};

struct SpanningTree {
  int vertices = 0;
  std::vector<WeightedEdge> edges;
  double total_weight = 0.0;
};

/// Kruskal on weights sorted descending, ties by ascending (i, j).
SpanningTree maximum_spanning_tree(const DependenceMatrix& w);
SpanningTree maximum_spanning_tree(const Matrix& weights);

/// Non-decreasing degree sequence.
struct TreeTopology {
  std::vector<int> degrees;
  bool operator==(const TreeTopology&) const = default;
};

TreeTopology tree_topology(const SpanningTree& t);

}  // namespace netstab

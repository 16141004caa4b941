#include "netstab/structures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netstab/error.hpp"
#include "netstab/matrix_io.hpp"

namespace netstab {

namespace {

int checked_vertex_count(int vertices) {
  if (vertices < 0) throw ShapeError("negative vertex count");
  return vertices;
}

}  // namespace

MarketGraph::MarketGraph(int vertices, std::vector<Edge> edges, double threshold)
    : vertices_(checked_vertex_count(vertices)),
      threshold_(threshold),
      words_(static_cast<std::size_t>((vertices + 63) / 64)),
      edges_(std::move(edges)),
      adjacency_(static_cast<std::size_t>(vertices) * words_, 0) {
  for (auto& [i, j] : edges_) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= vertices_) {
      throw ShapeError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (i == j) throw ShapeError("self-loop at vertex " + std::to_string(i));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw ShapeError("duplicate edge");
  for (auto [i, j] : edges_) {
    adjacency_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j / 64)] |= std::uint64_t{1} << (j % 64);
    adjacency_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
  }
}

bool MarketGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= vertices_ || j >= vertices_) return false;
  return (adjacency_row(i)[j / 64] >> (j % 64)) & 1U;
}

int MarketGraph::degree(int v) const {
  int d = 0;
  const auto* row = adjacency_row(v);
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row[w]);
  return d;
}

MarketGraph MarketGraph::complement() const {
  std::vector<Edge> edges;
  for (int i = 0; i < vertices_; ++i) {
    for (int j = i + 1; j < vertices_; ++j) {
      if (!has_edge(i, j)) edges.emplace_back(i, j);
    }
  }
  return MarketGraph(vertices_, std::move(edges), threshold_);
}

MarketGraph market_graph(const DependenceMatrix& w, double threshold) {
  const auto n = static_cast<int>(w.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w(i, j) > threshold) edges.emplace_back(i, j);
    }
  }
  return MarketGraph(n, std::move(edges), threshold);
}

double threshold_for(MeasureKind kind, double pearson_threshold, bool raw) {
  if (raw || kind == MeasureKind::Pearson) return pearson_threshold;
  return sign_probability(pearson_threshold);
}

DegreeDistribution degree_distribution(const MarketGraph& g) {
  DegreeDistribution d;
  d.counts.assign(static_cast<std::size_t>(g.vertices()), 0);
  for (int v = 0; v < g.vertices(); ++v) ++d.counts[static_cast<std::size_t>(g.degree(v))];
  return d;
}

std::vector<double> uniform_bins(double lower, double upper, double width) {
  if (!(width > 0.0) || !(upper > lower)) throw RangeError("bins need upper > lower and width > 0");
  const auto count = static_cast<long>(std::llround((upper - lower) / width));
  if (count < 1 || std::abs(lower + static_cast<double>(count) * width - upper) > 1e-9 * (upper - lower)) {
    throw RangeError("bin width " + format_double(width) + " does not divide [" + format_double(lower) + ", " +
                     format_double(upper) + "]");
  }
  std::vector<double> edges(static_cast<std::size_t>(count + 1));
  for (long k = 0; k < count; ++k) edges[static_cast<std::size_t>(k)] = lower + static_cast<double>(k) * width;
  edges.back() = upper;
  return edges;
}

std::vector<double> default_bins(MeasureKind kind, double width) {
  return kind == MeasureKind::Pearson ? uniform_bins(-1.0, 1.0, width) : uniform_bins(0.0, 1.0, width);
}

EdgeWeightHistogram edge_histogram(const DependenceMatrix& w, const std::vector<double>& bin_edges) {
  if (bin_edges.size() < 2 || !std::is_sorted(bin_edges.begin(), bin_edges.end(), std::less_equal<>())) {
    throw RangeError("bin edges must be strictly increasing with at least one bin");
  }
  EdgeWeightHistogram h{bin_edges, std::vector<long>(bin_edges.size() - 1, 0)};
  const Index n = w.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double v = w(i, j);
      if (!(v >= bin_edges.front() && v <= bin_edges.back())) {
        throw RangeError("weight " + format_double(v) + " outside histogram range");
      }
      auto bin = static_cast<std::size_t>(std::upper_bound(bin_edges.begin(), bin_edges.end(), v) - bin_edges.begin()) - 1;
      bin = std::min(bin, h.counts.size() - 1);
      ++h.counts[bin];
    }
  }
  return h;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

// Branch and bound over bitsets with greedy-coloring upper bounds. The search
// stops as soon as a clique larger than `best` reaches `stop_at`.
class CliqueSearch {
 public:
  explicit CliqueSearch(const MarketGraph& g) : g_(g), words_(g.words()) {}

  /// Largest clique size inside `candidates`, or any value >= stop_at once one
  /// that large is seen. Starts from `floor`, so cliques <= floor are ignored.
  int search(const Bits& candidates, int floor, int stop_at) {
    best_ = floor;
    stop_at_ = stop_at;
    expand(0, candidates);
    return best_;
  }

 private:
  void color_sort(const Bits& p, std::vector<int>& order, std::vector<int>& colors) const {
    Bits uncolored = p;
    int color = 0;
    while (any(uncolored)) {
      ++color;
      Bits q = uncolored;
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w] != 0) {
          const int bit = std::countr_zero(q[w]);
          const int v = static_cast<int>(w * 64) + bit;
          const std::uint64_t mask = ~(std::uint64_t{1} << bit);
          uncolored[w] &= mask;
          q[w] &= mask;
          const auto* row = g_.adjacency_row(v);
          for (std::size_t k = w; k < words_; ++k) q[k] &= ~row[k];
          order.push_back(v);
          colors.push_back(color);
        }
      }
    }
  }

  void expand(int size, Bits p) {
    std::vector<int> order;
    std::vector<int> colors;
    color_sort(p, order, colors);
    for (auto k = order.size(); k-- > 0;) {
      if (best_ >= stop_at_ || size + colors[k] <= best_) return;
      const int v = order[k];
      const auto* row = g_.adjacency_row(v);
      Bits next(words_);
      for (std::size_t w = 0; w < words_; ++w) next[w] = p[w] & row[w];
      if (any(next)) {
        expand(size + 1, std::move(next));
      } else if (size + 1 > best_) {
        best_ = size + 1;
      }
      p[static_cast<std::size_t>(v / 64)] &= ~(std::uint64_t{1} << (v % 64));
    }
  }

  const MarketGraph& g_;
  std::size_t words_;
  int best_ = 0;
  int stop_at_ = 0;
};

Bits all_vertices(const MarketGraph& g) {
  Bits b(g.words(), 0);
  for (int v = 0; v < g.vertices(); ++v) b[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64);
  return b;
}

bool test(const Bits& b, int v) { return (b[static_cast<std::size_t>(v / 64)] >> (v % 64)) & 1U; }

std::vector<int> lexicographic_max_clique(const MarketGraph& g) {
  if (g.vertices() == 0) return {};
  CliqueSearch search(g);
  const int target = search.search(all_vertices(g), 0, g.vertices() + 1);

  // Fix members one at a time, taking the smallest vertex that still leaves
  // room for a clique of the target size among larger neighbours.
  std::vector<int> members;
  Bits candidates = all_vertices(g);
  while (static_cast<int>(members.size()) < target) {
    const int remaining = target - static_cast<int>(members.size()) - 1;
    bool placed = false;
    for (int v = 0; v < g.vertices() && !placed; ++v) {
      if (!test(candidates, v)) continue;
      Bits next(g.words(), 0);
      const auto* row = g.adjacency_row(v);
      for (std::size_t w = 0; w < g.words(); ++w) next[w] = candidates[w] & row[w];
      for (int u = 0; u <= v; ++u) next[static_cast<std::size_t>(u / 64)] &= ~(std::uint64_t{1} << (u % 64));
      if (remaining == 0 || search.search(next, remaining - 1, remaining) >= remaining) {
        members.push_back(v);
        candidates = std::move(next);
        placed = true;
      }
    }
    if (!placed) throw Error("clique reconstruction failed");  // unreachable for a consistent bound
  }
  return members;
}

}  // namespace

int clique_number(const MarketGraph& g) {
  if (g.vertices() == 0) return 0;
  CliqueSearch search(g);
  return search.search(all_vertices(g), 0, g.vertices() + 1);
}

VertexSet max_clique(const MarketGraph& g) { return {lexicographic_max_clique(g), VertexSetKind::Clique}; }

VertexSet max_independent_set(const MarketGraph& g) {
  return {lexicographic_max_clique(g.complement()), VertexSetKind::IndependentSet};
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

}  // namespace

SpanningTree maximum_spanning_tree(const Matrix& weights) {
  if (weights.rows() != weights.cols()) throw ShapeError("weight matrix must be square");
  const auto n = static_cast<int>(weights.rows());
  if (n < 2) throw RangeError("spanning tree needs at least 2 vertices");
  std::vector<WeightedEdge> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(weights(i, j))) throw RangeError("non-finite edge weight");
      candidates.push_back({i, j, weights(i, j)});
    }
  }
  // Candidates are generated in (i, j) order, so a stable sort keeps ties by index.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight > b.weight; });
  SpanningTree tree;
  tree.vertices = n;
  DisjointSets sets(n);
  for (const auto& e : candidates) {
    if (sets.unite(e.u, e.v)) {
      tree.edges.push_back(e);
      tree.total_weight += e.weight;
      if (static_cast<int>(tree.edges.size()) == n - 1) break;
    }
  }
  return tree;
}

SpanningTree maximum_spanning_tree(const DependenceMatrix& w) { return maximum_spanning_tree(w.values()); }

TreeTopology tree_topology(const SpanningTree& t) {
  TreeTopology topo;
  topo.degrees.assign(static_cast<std::size_t>(t.vertices), 0);
  for (const auto& e : t.edges) {
    ++topo.degrees[static_cast<std::size_t>(e.u)];
    ++topo.degrees[static_cast<std::size_t>(e.v)];
  }
  std::sort(topo.degrees.begin(), topo.degrees.end());
  return topo;
}

}  // namespace netstab

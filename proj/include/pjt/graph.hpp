#pragma once

#include <set>
#include <utility>
#include <vector>

namespace pjt {

/// Simple undirected graph on vertices 1..n.
class Graph {
public:
  Graph() = default;
  explicit Graph(int vertex_count) : adjacency_(static_cast<std::size_t>(vertex_count) + 1) {}

  [[nodiscard]] int vertex_count() const noexcept {
    return static_cast<int>(adjacency_.size()) - 1;
  }

  /// Adds {u, v}. Self-loops are ignored; repeated edges are merged.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  [[nodiscard]] bool has_edge(int u, int v) const;
  [[nodiscard]] const std::set<int> &neighbors(int v) const { return adjacency_.at(v); }
  [[nodiscard]] int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  [[nodiscard]] std::size_t edge_count() const;
  /// Edges as (u, v) with u < v, in ascending order.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;

private:
  std::vector<std::set<int>> adjacency_; // index 0 unused
};

/// Number of edges that eliminating `v` would add among its neighbors.
[[nodiscard]] int fill_in_count(const Graph &g, int v);

/// Connects all neighbors of `v` pairwise, then detaches `v`.
void eliminate_vertex(Graph &g, int v);

/// Greedy min-fill elimination order over all vertices. Fill counts are
/// recomputed after every elimination; ties go to the lowest index.
[[nodiscard]] std::vector<int> minfill_order(const Graph &g);

} // namespace pjt

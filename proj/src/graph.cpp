#include "pjt/graph.hpp"

#include <iterator>
#include <limits>

namespace pjt {

void Graph::add_edge(int u, int v) {
  if (u == v)
    return;
  adjacency_.at(u).insert(v);
  adjacency_.at(v).insert(u);
}

void Graph::remove_edge(int u, int v) {
  adjacency_.at(u).erase(v);
  adjacency_.at(v).erase(u);
}

bool Graph::has_edge(int u, int v) const { return adjacency_.at(u).contains(v); }

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto &adj : adjacency_)
    twice += adj.size();
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> result;
  for (int u = 1; u <= vertex_count(); ++u)
    for (int v : adjacency_[u])
      if (u < v)
        result.emplace_back(u, v);
  return result;
}

int fill_in_count(const Graph &g, int v) {
  const auto &nbrs = g.neighbors(v);
  int missing = 0;
  for (auto a = nbrs.begin(); a != nbrs.end(); ++a)
    for (auto b = std::next(a); b != nbrs.end(); ++b)
      if (!g.has_edge(*a, *b))
        ++missing;
  return missing;
}

void eliminate_vertex(Graph &g, int v) {
  const std::vector<int> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      g.add_edge(nbrs[i], nbrs[j]);
  for (int u : nbrs)
    g.remove_edge(u, v);
}

std::vector<int> minfill_order(const Graph &g) {
  Graph work = g;
  const int n = g.vertex_count();
  std::vector<bool> done(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int best = 0;
    int best_fill = std::numeric_limits<int>::max();
    for (int v = 1; v <= n; ++v) {
      if (done[v])
        continue;
      const int fill = fill_in_count(work, v);
      if (fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    done[best] = true;
    order.push_back(best);
    eliminate_vertex(work, best);
  }
  return order;
}

} // namespace pjt

#include "pjt/tree_decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"
#include "text_util.hpp"

namespace pjt {

int TreeDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto &b : bags)
    largest = std::max(largest, b.size());
  return static_cast<int>(largest) - 1;
}

std::vector<std::vector<int>> TreeDecomposition::adjacency() const {
  std::vector<std::vector<int>> adj(bags.size() + 1);
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1 || a > bag_count() || b > bag_count())
      continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto &nbrs : adj)
    std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

namespace {

/// Number of bags reachable from bag 1 over `edges`.
int reachable_from_first(const TreeDecomposition &td) {
  if (td.bags.empty())
    return 0;
  const auto adj = td.adjacency();
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> stack{1};
  seen[1] = true;
  int count = 0;
  while (!stack.empty()) {
    const int b = stack.back();
    stack.pop_back();
    ++count;
    for (int c : adj[b])
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  return count;
}

int to_int(std::string_view word, int line, const char *what) {
  const auto value = parse_integer(word);
  if (!value || *value < -2'000'000'000 || *value > 2'000'000'000)
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(word) + "'");
  return static_cast<int>(*value);
}

} // namespace

TreeDecomposition parse_td(std::string_view text) {
  TreeDecomposition td;
  std::optional<int> solution_line;
  std::vector<bool> defined;

  for (const auto &[number, line] : detail::split_lines(text)) {
    const auto words = detail::split_words(line);
    if (words.empty() || words.front().front() == 'c')
      continue;
    if (words.front() == "s") {
      if (solution_line)
        throw ParseError(number, "duplicate solution line");
      if (words.size() != 5 || words[1] != "td")
        throw ParseError(number, "solution line must be `s td <bags> <width+1> <vertices>`");
      const int bag_count = to_int(words[2], number, "bag count");
      to_int(words[3], number, "bag size");
      const int vertex_count = to_int(words[4], number, "vertex count");
      if (bag_count < 0 || vertex_count < 0)
        throw ParseError(number, "negative count on solution line");
      td.vertex_count = vertex_count;
      td.bags.assign(static_cast<std::size_t>(bag_count), {});
      defined.assign(static_cast<std::size_t>(bag_count), false);
      solution_line = number;
      continue;
    }
    if (!solution_line)
      throw ParseError(number, "content before solution line");
    if (words.front() == "b") {
      if (words.size() < 2)
        throw ParseError(number, "bag line without an index");
      const int id = to_int(words[1], number, "bag index");
      if (id < 1 || id > td.bag_count())
        throw ParseError(number, "bag index " + std::to_string(id) + " out of range 1.." +
                                     std::to_string(td.bag_count()));
      if (defined[id - 1])
        throw ParseError(number, "duplicate bag " + std::to_string(id));
      defined[id - 1] = true;
      auto &bag = td.bags[id - 1];
      for (std::size_t k = 2; k < words.size(); ++k) {
        const int v = to_int(words[k], number, "vertex");
        if (v < 1 || v > td.vertex_count)
          throw ParseError(number, "vertex " + std::to_string(v) + " out of range 1.." +
                                       std::to_string(td.vertex_count));
        bag.push_back(v);
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      continue;
    }
    if (words.size() != 2)
      throw ParseError(number, "edge line must be `<bag> <bag>`");
    const int a = to_int(words[0], number, "bag index");
    const int b = to_int(words[1], number, "bag index");
    for (int id : {a, b})
      if (id < 1 || id > td.bag_count())
        throw ParseError(number, "bag index " + std::to_string(id) + " out of range 1.." +
                                     std::to_string(td.bag_count()));
    if (a == b)
      throw ParseError(number, "self-loop on bag " + std::to_string(a));
    td.edges.emplace_back(a, b);
  }

  if (!solution_line)
    throw ParseError(0, "missing solution line");
  for (int id = 1; id <= td.bag_count(); ++id)
    if (!defined[id - 1])
      throw ParseError(*solution_line, "bag " + std::to_string(id) + " is never defined");
  if (td.bag_count() > 0 &&
      (static_cast<int>(td.edges.size()) != td.bag_count() - 1 || reachable_from_first(td) != td.bag_count()))
    throw ParseError(*solution_line, "bag edges do not form a tree");
  return td;
}

std::string write_td(const TreeDecomposition &td) {
  std::string out = "s td " + std::to_string(td.bag_count()) + " " + std::to_string(td.width() + 1) +
                    " " + std::to_string(td.vertex_count) + "\n";
  for (int id = 1; id <= td.bag_count(); ++id) {
    out += "b " + std::to_string(id);
    for (int v : td.bag(id))
      out += " " + std::to_string(v);
    out += "\n";
  }
  for (auto [a, b] : td.edges)
    out += std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

Violations td_validate(const TreeDecomposition &td, const Graph &g) {
  Violations out;
  const auto structure = [&](std::string msg) { out.push_back({ViolationKind::Structure, std::move(msg)}); };

  if (td.bags.empty())
    structure("decomposition has no bags");
  for (auto [a, b] : td.edges)
    if (a < 1 || b < 1 || a > td.bag_count() || b > td.bag_count() || a == b)
      structure("edge " + std::to_string(a) + "-" + std::to_string(b) + " is not between two distinct bags");
  if (!td.bags.empty() && (static_cast<int>(td.edges.size()) != td.bag_count() - 1 ||
                           reachable_from_first(td) != td.bag_count()))
    structure("bag edges do not form a tree");
  for (int id = 1; id <= td.bag_count(); ++id)
    for (int v : td.bag(id))
      if (v < 1 || v > g.vertex_count())
        structure("bag " + std::to_string(id) + " holds vertex " + std::to_string(v) + " outside the graph");

  const int n = g.vertex_count();
  std::vector<std::vector<int>> holders(static_cast<std::size_t>(n) + 1);
  for (int id = 1; id <= td.bag_count(); ++id)
    for (int v : td.bag(id))
      if (v >= 1 && v <= n)
        holders[v].push_back(id);

  for (int v = 1; v <= n; ++v)
    if (holders[v].empty())
      out.push_back({ViolationKind::VertexCoverage, "vertex " + std::to_string(v) + " is in no bag", v});

  for (auto [u, v] : g.edges()) {
    const auto &hu = holders[u];
    const auto &hv = holders[v];
    std::vector<int> both;
    std::set_intersection(hu.begin(), hu.end(), hv.begin(), hv.end(), std::back_inserter(both));
    if (both.empty())
      out.push_back({ViolationKind::EdgeCoverage,
                     "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag"});
  }

  const auto adj = td.adjacency();
  for (int v = 1; v <= n; ++v) {
    const auto &hv = holders[v];
    if (hv.size() < 2)
      continue;
    std::vector<bool> holds(adj.size(), false), seen(adj.size(), false);
    for (int id : hv)
      holds[id] = true;
    std::vector<int> stack{hv.front()};
    seen[hv.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const int b = stack.back();
      stack.pop_back();
      ++reached;
      for (int c : adj[b])
        if (holds[c] && !seen[c]) {
          seen[c] = true;
          stack.push_back(c);
        }
    }
    if (reached != hv.size())
      out.push_back({ViolationKind::RunningIntersection,
                     "bags holding vertex " + std::to_string(v) + " are not connected"});
  }
  return out;
}

TreeDecomposition td_from_elimination_order(const Graph &g, const std::vector<int> &order) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  td.vertex_count = n;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }
  std::vector<int> position(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t i = 0; i < order.size(); ++i)
    position.at(order[i]) = static_cast<int>(i);
  if (order.size() != static_cast<std::size_t>(n) ||
      std::find(position.begin() + 1, position.end(), -1) != position.end())
    throw std::invalid_argument("elimination order must be a permutation of the vertices");

  Graph work = g;
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    std::vector<int> bag(work.neighbors(v).begin(), work.neighbors(v).end());
    int next = -1;
    for (int u : bag)
      if (next < 0 || position[u] < next)
        next = position[u];
    parent[i] = next;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    eliminate_vertex(work, v);
  }
  // Component roots are chained onto the last bag to make a single tree.
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0)
      td.edges.emplace_back(i + 1, parent[i] + 1);
    else if (i != n - 1)
      td.edges.emplace_back(i + 1, n);
  }
  return td;
}

TreeDecomposition build_td_minfill(const Graph &g) { return td_from_elimination_order(g, minfill_order(g)); }

std::optional<std::string> TdStreamReader::next_document() {
  std::string doc;
  bool has_solution = false;
  if (carry_) {
    doc = *carry_ + "\n";
    carry_.reset();
    has_solution = true;
  }
  std::string line;
  while (std::getline(in_, line)) {
    const auto words = detail::split_words(line);
    if (words.size() >= 2 && words[0] == "s" && words[1] == "td") {
      if (has_solution) {
        carry_ = line;
        return doc;
      }
      has_solution = true;
    }
    doc += line;
    doc += '\n';
  }
  if (!has_solution)
    return std::nullopt;
  return doc;
}

} // namespace pjt

#include "pjt/planner_htb.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pjt/errors.hpp"
#include "pjt/pbf.hpp"

namespace pjt {

namespace {

struct HeuristicName {
  OrderHeuristic heuristic;
  std::string_view name;
};

constexpr std::array<HeuristicName, 9> kHeuristicNames{{
    {OrderHeuristic::Random, "random"},
    {OrderHeuristic::Mcs, "mcs"},
    {OrderHeuristic::InvMcs, "invmcs"},
    {OrderHeuristic::LexP, "lexp"},
    {OrderHeuristic::InvLexP, "invlexp"},
    {OrderHeuristic::LexM, "lexm"},
    {OrderHeuristic::InvLexM, "invlexm"},
    {OrderHeuristic::MinFill, "minfill"},
    {OrderHeuristic::InvMinFill, "invminfill"},
}};

} // namespace

std::string_view to_string(OrderHeuristic h) noexcept {
  for (const auto &entry : kHeuristicNames)
    if (entry.heuristic == h)
      return entry.name;
  return "unknown";
}

std::string_view to_string(RankMethod r) noexcept {
  return r == RankMethod::BucketElimination ? "be" : "bm";
}

std::string_view to_string(ClusterMethod c) noexcept { return c == ClusterMethod::List ? "list" : "tree"; }

std::optional<OrderHeuristic> parse_order_heuristic(std::string_view name) noexcept {
  for (const auto &entry : kHeuristicNames)
    if (entry.name == name)
      return entry.heuristic;
  return std::nullopt;
}

std::optional<RankMethod> parse_rank_method(std::string_view name) noexcept {
  if (name == "be")
    return RankMethod::BucketElimination;
  if (name == "bm")
    return RankMethod::BouquetsMethod;
  return std::nullopt;
}

std::optional<ClusterMethod> parse_cluster_method(std::string_view name) noexcept {
  if (name == "list")
    return ClusterMethod::List;
  if (name == "tree")
    return ClusterMethod::Tree;
  return std::nullopt;
}

std::vector<int> VarOrder::sequence() const {
  std::vector<int> seq(static_cast<std::size_t>(size()), 0);
  for (int x = 1; x <= size(); ++x)
    seq.at(static_cast<std::size_t>(rank[x]) - 1) = x;
  return seq;
}

VarOrder VarOrder::from_sequence(std::span<const int> sequence, OrderHeuristic heuristic) {
  VarOrder order;
  order.heuristic = heuristic;
  order.rank.assign(sequence.size() + 1, 0);
  for (std::size_t k = 0; k < sequence.size(); ++k)
    order.rank.at(sequence[k]) = static_cast<int>(k) + 1;
  return order;
}

namespace {

using Label = std::vector<int>; // descending visit numbers

std::vector<int> mcs_sequence(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<int> weight(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> chosen(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> seq;
  for (int step = 0; step < n; ++step) {
    int best = 0;
    for (int v = 1; v <= n; ++v)
      if (!chosen[v] && (best == 0 || weight[v] > weight[best]))
        best = v;
    chosen[best] = true;
    seq.push_back(best);
    for (int u : g.neighbors(best))
      ++weight[u];
  }
  return seq;
}

int lexicographically_smallest(const std::vector<Label> &labels, const std::vector<bool> &chosen) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(labels.size()); ++v)
    if (!chosen[v] && (best == 0 || labels[v] < labels[best]))
      best = v;
  return best;
}

std::vector<int> lexp_sequence(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<Label> labels(static_cast<std::size_t>(n) + 1);
  std::vector<bool> chosen(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> seq;
  for (int step = 1; step <= n; ++step) {
    const int x = lexicographically_smallest(labels, chosen);
    chosen[x] = true;
    seq.push_back(x);
    for (int y : g.neighbors(x))
      if (!chosen[y])
        labels[y].push_back(n - step + 1);
  }
  return seq;
}

std::vector<int> lexm_sequence(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<Label> labels(static_cast<std::size_t>(n) + 1);
  std::vector<bool> chosen(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> seq;
  for (int step = 1; step <= n; ++step) {
    const int x = lexicographically_smallest(labels, chosen);
    chosen[x] = true;
    seq.push_back(x);
    // y gets the number when some path x, z1..zk, y runs through unchosen z
    // whose labels are all smaller than y's.
    std::vector<int> reached;
    for (int y = 1; y <= n; ++y) {
      if (chosen[y])
        continue;
      std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
      std::vector<int> stack{x};
      seen[x] = true;
      bool hit = false;
      while (!stack.empty() && !hit) {
        const int z = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(z)) {
          if (w == y) {
            hit = true;
            break;
          }
          if (!seen[w] && !chosen[w] && labels[w] < labels[y]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      if (hit)
        reached.push_back(y);
    }
    for (int y : reached)
      labels[y].push_back(n - step + 1);
  }
  return seq;
}

std::vector<int> random_sequence(int n, std::uint64_t seed) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(seq.begin(), seq.end(), rng);
  return seq;
}

VarOrder inverted(VarOrder order, OrderHeuristic heuristic) {
  const int m = order.size();
  for (int x = 1; x <= m; ++x)
    order.rank[x] = m + 1 - order.rank[x];
  order.heuristic = heuristic;
  return order;
}

} // namespace

VarOrder var_order(OrderHeuristic heuristic, const Graph &g, std::uint64_t seed) {
  switch (heuristic) {
  case OrderHeuristic::Random:
    return VarOrder::from_sequence(random_sequence(g.vertex_count(), seed), heuristic);
  case OrderHeuristic::Mcs:
    return VarOrder::from_sequence(mcs_sequence(g), heuristic);
  case OrderHeuristic::LexP:
    return VarOrder::from_sequence(lexp_sequence(g), heuristic);
  case OrderHeuristic::LexM:
    return VarOrder::from_sequence(lexm_sequence(g), heuristic);
  case OrderHeuristic::MinFill:
    return VarOrder::from_sequence(minfill_order(g), heuristic);
  case OrderHeuristic::InvMcs:
    return inverted(var_order(OrderHeuristic::Mcs, g), heuristic);
  case OrderHeuristic::InvLexP:
    return inverted(var_order(OrderHeuristic::LexP, g), heuristic);
  case OrderHeuristic::InvLexM:
    return inverted(var_order(OrderHeuristic::LexM, g), heuristic);
  case OrderHeuristic::InvMinFill:
    return inverted(var_order(OrderHeuristic::MinFill, g), heuristic);
  }
  throw std::invalid_argument("unknown order heuristic");
}

VarOrder cluster_var_order(const HtbConfig &config, const CnfFormula &formula) {
  return var_order(config.order, gaifman_graph(formula), config.seed);
}

int clause_rank(const Clause &clause, const VarOrder &rho, RankMethod method) {
  const auto vars = clause_vars(clause);
  if (vars.empty())
    return rho.size();
  const auto by_rank = [&](int a, int b) { return rho(a) < rho(b); };
  return method == RankMethod::BucketElimination ? rho(*std::min_element(vars.begin(), vars.end(), by_rank))
                                                 : rho(*std::max_element(vars.begin(), vars.end(), by_rank));
}

int chosen_cluster(std::span<const int> node_vars, int i, ClusterMethod method,
                   std::span<const int> cluster_of_var, int m) {
  if (method == ClusterMethod::List)
    return i + 1;
  int best = m;
  for (int x : node_vars) {
    const int j = cluster_of_var[x];
    if (j > i && j < best)
      best = j;
  }
  return best;
}

HtbPlan build_tree_traced(const CnfFormula &formula, const HtbConfig &config) {
  const int m = formula.var_count;
  if (m < 1)
    throw InvalidInput("the tree builder needs at least one variable");
  const int l = formula.clause_count();

  HtbPlan plan{ProjectJoinTree(m, l), cluster_var_order(config, formula), {}, {}, {}};
  plan.clause_rank.assign(static_cast<std::size_t>(l) + 1, 0);
  plan.cluster_of_var.assign(static_cast<std::size_t>(m) + 1, 0);

  std::vector<std::vector<int>> kappa(static_cast<std::size_t>(m) + 1);
  std::vector<std::vector<int>> cluster_vars(static_cast<std::size_t>(m) + 1);
  for (const auto &c : formula.clauses) {
    const int i = clause_rank(c, plan.order, config.rank);
    plan.clause_rank[c.id] = i;
    kappa[i].push_back(c.id);
    cluster_vars[i] = var_union(cluster_vars[i], clause_vars(c));
  }
  // X_i = vars(Γ_i) minus every variable of a later cluster.
  for (int i = m; i >= 1; --i)
    for (int x : cluster_vars[i])
      if (plan.cluster_of_var[x] == 0)
        plan.cluster_of_var[x] = i;
  std::vector<std::vector<int>> projected(static_cast<std::size_t>(m) + 1);
  for (int x = 1; x <= m; ++x)
    if (plan.cluster_of_var[x] != 0)
      projected[plan.cluster_of_var[x]].push_back(x);
  const auto free = formula.free_vars();
  projected[m] = var_union(projected[m], free);

  std::vector<std::vector<int>> vars(static_cast<std::size_t>(l) + 1);
  for (const auto &c : formula.clauses)
    vars[c.id] = clause_vars(c);

  for (int i = 1; i <= m; ++i) {
    if (kappa[i].empty())
      continue;
    std::vector<int> below;
    for (int child : kappa[i])
      below = var_union(below, vars[child]);
    const int id = plan.tree.add_internal(kappa[i], projected[i]);
    vars.push_back(var_difference(below, projected[i]));
    plan.cluster_of_node.resize(static_cast<std::size_t>(id) + 1, 0);
    plan.cluster_of_node[id] = i;
    if (i < m)
      kappa[chosen_cluster(vars[id], i, config.cluster, plan.cluster_of_var, m)].push_back(id);
  }
  if (kappa[m].empty()) {
    // Only reachable with no clauses: a childless root takes every variable.
    const int id = plan.tree.add_internal({}, projected[m]);
    plan.cluster_of_node.resize(static_cast<std::size_t>(id) + 1, 0);
    plan.cluster_of_node[id] = m;
  }
  plan.cluster_of_node.resize(static_cast<std::size_t>(plan.tree.node_count()) + 1, 0);
  return plan;
}

ProjectJoinTree build_tree(const CnfFormula &formula, const HtbConfig &config) {
  return build_tree_traced(formula, config).tree;
}

} // namespace pjt

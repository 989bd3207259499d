#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

namespace pjt::testing {

namespace {

Clause make_clause(std::initializer_list<int> lits, int id) {
  Clause c;
  c.id = id;
  for (int l : lits)
    c.literals.push_back({l > 0 ? l : -l, l > 0});
  return c;
}

} // namespace

CnfFormula one_model_formula() { return parse_cnf(kOneModelCnf); }

ProjectJoinTree one_model_tree() { return read_jt(kOneModelJt); }

CnfFormula wide_example_formula() {
  CnfFormula f;
  f.var_count = 4;
  f.weights = WeightFunction(4);
  f.clauses = {make_clause({-2}, 1), make_clause({3, 4}, 2), make_clause({-1, -3}, 3),
               make_clause({1, 3, -4}, 4)};
  return f;
}

ProjectJoinTree wide_example_tree() {
  ProjectJoinTree t(4, 4);
  t.add_internal({1}, {2});
  t.add_internal({4, 3}, {1});
  t.add_internal({6, 2}, {3, 4});
  t.add_internal({7, 5}, {});
  return t;
}

WeightFunction uniform_weights(int var_count, double neg, double pos) {
  WeightFunction w(var_count);
  for (int x = 1; x <= var_count; ++x)
    w[x] = {neg, pos};
  return w;
}

WeightFunction random_weights(int var_count, std::mt19937_64 &rng) {
  WeightFunction w(var_count);
  std::bernoulli_distribution coin(0.5);
  for (int x = 1; x <= var_count; ++x)
    w[x] = coin(rng) ? LiteralWeight{1.5, 0.5} : LiteralWeight{0.5, 1.5};
  return w;
}

CnfFormula random_cnf(std::mt19937_64 &rng, const CnfShape &shape) {
  std::uniform_int_distribution<int> var_count(shape.min_vars, shape.max_vars);
  std::uniform_int_distribution<int> clause_count(shape.min_clauses, shape.max_clauses);
  std::bernoulli_distribution coin(0.5);
  CnfFormula f;
  f.var_count = var_count(rng);
  f.weights = random_weights(f.var_count, rng);
  const int l = clause_count(rng);
  std::uniform_int_distribution<int> len(1, std::min(shape.max_clause_len, f.var_count));
  for (int id = 1; id <= l; ++id) {
    Clause c;
    c.id = id;
    for (int x : random_vars(rng, f.var_count, len(rng)))
      c.literals.push_back({x, coin(rng)});
    std::shuffle(c.literals.begin(), c.literals.end(), rng);
    f.clauses.push_back(std::move(c));
  }
  return f;
}

std::vector<CnfFormula> random_corpus(int count, std::uint64_t seed, const CnfShape &shape) {
  std::mt19937_64 rng(seed);
  std::vector<CnfFormula> corpus;
  for (int k = 0; k < count; ++k)
    corpus.push_back(random_cnf(rng, shape));
  return corpus;
}

std::vector<HtbConfig> all_htb_configs(std::uint64_t seed) {
  std::vector<HtbConfig> configs;
  for (auto order : kAllOrderHeuristics)
    for (auto rank : {RankMethod::BucketElimination, RankMethod::BouquetsMethod})
      for (auto cluster : {ClusterMethod::List, ClusterMethod::Tree})
        configs.push_back({order, rank, cluster, seed});
  return configs;
}

double enumerate_wmc(const CnfFormula &formula, const WeightFunction &weights) {
  const int m = formula.var_count;
  double total = 0;
  std::vector<bool> assignment(static_cast<std::size_t>(m) + 1, false);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    for (int v = 1; v <= m; ++v)
      assignment[v] = (bits >> (v - 1)) & 1;
    if (!std::all_of(formula.clauses.begin(), formula.clauses.end(),
                     [&](const Clause &c) { return c.satisfied_by(assignment); }))
      continue;
    double w = 1;
    for (int v = 1; v <= m; ++v)
      w *= assignment[v] ? weights[v].pos : weights[v].neg;
    total += w;
  }
  return total;
}

DenseFunction dense_node_valuation(const ProjectJoinTree &tree, const CnfFormula &formula,
                                   const WeightFunction &weights, int node) {
  DenseFunction f(1.0);
  for (int c : subtree_clauses(tree, node))
    f = product(f, clause_function(formula.clause(c)));
  for (int x : subtree_projected(tree, node)) {
    f = product(f, weight_function(x, weights[x]));
    f = project(f, x);
  }
  return f;
}

Graph random_graph(std::mt19937_64 &rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (edge(rng))
        g.add_edge(u, v);
  return g;
}

TreeDecomposition random_td(std::mt19937_64 &rng, const Graph &g) {
  std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  return td_from_elimination_order(g, order);
}

DenseFunction random_dense(std::mt19937_64 &rng, std::vector<int> vars, const std::vector<double> &values) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  auto f = DenseFunction::filled(std::move(vars), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = values[pick(rng)];
  return f;
}

std::vector<int> random_vars(std::mt19937_64 &rng, int universe, int size) {
  std::vector<int> all(static_cast<std::size_t>(universe));
  std::iota(all.begin(), all.end(), 1);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(size));
  std::sort(all.begin(), all.end());
  return all;
}

} // namespace pjt::testing

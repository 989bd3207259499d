#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "pjt/add.hpp"
#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"

using namespace pjt;

namespace {

DiagramOrder identity_order(int m) {
  std::vector<int> seq(static_cast<std::size_t>(m));
  std::iota(seq.begin(), seq.end(), 1);
  return DiagramOrder::from_sequence(seq);
}

std::vector<int> all_vars(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

Clause clause(std::initializer_list<int> lits) {
  Clause c;
  c.id = 1;
  for (int l : lits)
    c.literals.push_back({l > 0 ? l : -l, l > 0});
  return c;
}

// Builds a dense function as a diagram by Shannon expansion in σ order.
Add from_dense(AddManager &mgr, const DenseFunction &f) {
  const auto seq = mgr.order().sequence();
  std::vector<int> domain;
  for (int x : seq)
    if (f.contains(x))
      domain.push_back(x);
  std::function<Add(std::size_t, std::vector<int> &)> build = [&](std::size_t k, std::vector<int> &on) -> Add {
    if (k == domain.size()) {
      auto sorted = on;
      std::sort(sorted.begin(), sorted.end());
      return mgr.terminal(f.at(sorted));
    }
    const Add low = build(k + 1, on);
    on.push_back(domain[k]);
    const Add high = build(k + 1, on);
    on.pop_back();
    return mgr.decision(domain[k], low, high);
  };
  std::vector<int> on;
  return build(0, on);
}

bool levels_descend(const AddManager &mgr, Add f) {
  if (mgr.is_terminal(f))
    return true;
  const int level = mgr.order().level[mgr.top_var(f)];
  for (Add c : {mgr.low(f), mgr.high(f)}) {
    if (!mgr.is_terminal(c) && mgr.order().level[mgr.top_var(c)] <= level)
      return false;
    if (!levels_descend(mgr, c))
      return false;
  }
  return mgr.low(f) != mgr.high(f);
}

} // namespace

TEST_CASE("default_order") {
  CHECK(default_order(testing::one_model_formula()).sequence() == std::vector<int>{1, 3, 4, 2, 5});
  CHECK(default_order(parse_cnf("p cnf 1 1\n1 0\n")).sequence() == std::vector<int>{1});
  CHECK(DiagramOrder::from_sequence(std::vector<int>{3, 1, 2}).level == std::vector<int>{0, 2, 3, 1});
  CHECK_THROWS_AS(static_cast<void>(DiagramOrder::from_sequence(std::vector<int>{1, 1})), std::invalid_argument);
}

TEST_CASE("terminals and decisions") {
  AddManager mgr(identity_order(3));
  CHECK(mgr.terminal(2.5) == mgr.terminal(2.5));
  CHECK(mgr.terminal(-0.0) == mgr.terminal(0.0));
  CHECK(mgr.value(mgr.terminal(2.5)) == 2.5);
  const Add one = mgr.terminal(1);
  CHECK(mgr.decision(2, one, one) == one);
  const Add d = mgr.decision(2, mgr.terminal(0), one);
  CHECK(mgr.top_var(d) == 2);
  CHECK(mgr.decision(2, mgr.terminal(0), one) == d);
  CHECK_THROWS_AS(static_cast<void>(mgr.decision(3, d, one)), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(mgr.decision(4, one, mgr.terminal(0))), InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(mgr.value(d)), std::logic_error);
}

TEST_CASE("from_clause") {
  AddManager mgr(identity_order(3));
  const Add unit = mgr.from_clause(clause({2}));
  CHECK(mgr.top_var(unit) == 2);
  CHECK(mgr.low(unit) == mgr.terminal(0));
  CHECK(mgr.high(unit) == mgr.terminal(1));

  const Add pair = mgr.from_clause(clause({1, 3}));
  CHECK(mgr.node_count(pair) == 4);
  CHECK(mgr.to_dense(pair, {1, 3}) == DenseFunction({1, 3}, {0, 1, 1, 1}));

  CHECK(mgr.from_clause(clause({2, -2})) == mgr.terminal(1));
  CHECK(mgr.from_clause(clause({})) == mgr.terminal(0));

  for (const auto &f : testing::random_corpus(30, 51)) {
    AddManager m(default_order(f));
    for (const auto &c : f.clauses) {
      const auto dense = clause_function(c);
      CHECK(m.to_dense(m.from_clause(c), dense.vars()) == dense);
    }
  }
}

TEST_CASE("product and sum") {
  AddManager mgr(identity_order(3));
  const Add f = mgr.from_clause(clause({1, 3}));
  CHECK(mgr.product(f, mgr.terminal(1)) == f);
  CHECK(mgr.product(mgr.terminal(2), mgr.terminal(3)) == mgr.terminal(6));
  CHECK(mgr.sum(mgr.terminal(2), mgr.terminal(3)) == mgr.terminal(5));
  const Add g = mgr.from_clause(clause({-1, -3}));
  CHECK(mgr.to_dense(mgr.product(f, g), {1, 3}) ==
        product(clause_function(clause({1, 3})), clause_function(clause({-1, -3}))));
  CHECK(mgr.product(f, g) == mgr.product(g, f));
  CHECK(mgr.scale(f, 2) == mgr.product(f, mgr.terminal(2)));
}

TEST_CASE("project_weighted") {
  AddManager mgr(identity_order(4));
  const Add x = mgr.decision(1, mgr.terminal(0), mgr.terminal(1));
  CHECK(mgr.project_weighted(x, 1, {1.5, 0.5}) == mgr.terminal(0.5));
  const Add y = mgr.from_clause(clause({2, 3}));
  CHECK(mgr.project_weighted(y, 4, {1, 1}) == mgr.scale(y, 2));
  CHECK_THROWS_AS(static_cast<void>(mgr.project_weighted(y, 5, {1, 1})), InvalidInput);

  std::mt19937_64 rng(52);
  for (int k = 0; k < 100; ++k) {
    const auto dense = testing::random_dense(rng, all_vars(4), {0, 0.5, 1, 2, 3});
    const Add f = from_dense(mgr, dense);
    CHECK(mgr.to_dense(f, all_vars(4)) == dense);
    const int v = 1 + static_cast<int>(rng() % 4);
    const LiteralWeight w{0.5 + static_cast<double>(rng() % 3), 0.25 + static_cast<double>(rng() % 2)};
    auto expect = project_weighted(dense, v, w);
    CHECK(approx_equal(mgr.to_dense(mgr.project_weighted(f, v, w), expect.vars()), expect));
  }
}

TEST_CASE("to_dense") {
  AddManager mgr(identity_order(2));
  CHECK(mgr.to_dense(mgr.terminal(3), {}) == DenseFunction(3.0));
  CHECK(mgr.to_dense(mgr.decision(1, mgr.terminal(1), mgr.terminal(2)), {1}) == DenseFunction({1}, {1, 2}));
  CHECK(mgr.to_dense(mgr.terminal(3), {2}) == DenseFunction({2}, {3, 3}));
  CHECK_THROWS_AS(static_cast<void>(mgr.to_dense(mgr.from_clause(clause({1, 2})), {1})), InvalidInput);
}

TEST_CASE("handles from another manager are rejected") {
  AddManager a(identity_order(2));
  AddManager b(identity_order(2));
  CHECK_THROWS_AS(static_cast<void>(a.product(a.terminal(1), b.terminal(1))), InvalidInput);
}

TEST_CASE("valuate on the one-model example") {
  const auto f = testing::one_model_formula();
  const auto t = testing::one_model_tree();
  AddExecutor exec(f, default_order(f));
  CHECK(exec.valuate(t, testing::uniform_weights(5, 1, 1)) == 1.0);
  CHECK(approx_equal(exec.valuate(t, testing::uniform_weights(5, 1.5, 0.5)), 0.28125, 0, 1e-12));
  CHECK(valuate_add(t, f) == 1.0);
}

TEST_CASE("valuate with no clauses") {
  const auto f = parse_cnf("p cnf 1 0\n");
  ProjectJoinTree t(1, 0);
  t.add_internal({}, {1});
  CHECK(valuate_add(t, f) == 2.0);
}

TEST_CASE("executor checks its inputs") {
  const auto f = testing::one_model_formula();
  CHECK_THROWS_AS(AddExecutor(f, identity_order(4)), InvalidInput);
  AddExecutor exec(f, identity_order(5));
  auto broken = testing::one_model_tree();
  broken.node(13).projected.clear();
  CHECK_THROWS_AS(static_cast<void>(exec.valuate(broken, f.weights)), InvalidInput);
}

TEST_CASE("canonicity across clause orders") {
  std::mt19937_64 rng(53);
  const auto corpus = testing::random_corpus(100, 54, {3, 10, 1, 12, 3});
  for (const auto &f : corpus) {
    AddManager mgr(default_order(f));
    Add forward = mgr.terminal(1);
    for (const auto &c : f.clauses)
      forward = mgr.product(forward, mgr.from_clause(c));
    auto shuffled = f.clauses;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Add backward = mgr.terminal(1);
    for (const auto &c : shuffled)
      backward = mgr.product(mgr.from_clause(c), backward);
    CHECK(forward == backward);
    CHECK(mgr.node_count(forward) == mgr.node_count(backward));
    CHECK(levels_descend(mgr, forward));
  }
}

TEST_CASE("node valuations match the dense lemma") {
  const auto corpus = testing::random_corpus(60, 55, {3, 10, 1, 20, 4});
  for (const auto &f : corpus) {
    const auto t = build_tree(f, {OrderHeuristic::MinFill, RankMethod::BouquetsMethod, ClusterMethod::Tree, 0});
    AddExecutor exec(f, default_order(f));
    const auto adds = exec.valuate_all(t, f.weights);
    const auto vars = all_node_vars(t, f);
    for (const auto &n : t.nodes()) {
      CHECK(levels_descend(exec.manager(), adds[n.id]));
      const auto expect = testing::dense_node_valuation(t, f, f.weights, n.id);
      CHECK(approx_equal(exec.manager().to_dense(adds[n.id], vars[n.id]), expect));
    }
  }
}

TEST_CASE("doubling weights scales the count") {
  std::mt19937_64 rng(56);
  const auto corpus = testing::random_corpus(60, 57);
  for (const auto &f : corpus) {
    const auto t = build_tree(f, {});
    AddExecutor exec(f, default_order(f));
    const auto unit = testing::uniform_weights(f.var_count, 1, 1);
    auto doubled = unit;
    int k = 0;
    for (int x = 1; x <= f.var_count; ++x)
      if (rng() % 2) {
        doubled[x] = {2, 2};
        ++k;
      }
    CHECK(approx_equal(exec.valuate(t, doubled), std::ldexp(exec.valuate(t, unit), k)));
  }
}

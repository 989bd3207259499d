#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "pjt/errors.hpp"
#include "pjt/planner_htb.hpp"

using namespace pjt;

namespace {

bool is_permutation_of_ranks(const VarOrder &rho, int m) {
  if (rho.size() != m)
    return false;
  auto seq = rho.sequence();
  std::sort(seq.begin(), seq.end());
  std::vector<int> want(static_cast<std::size_t>(m));
  std::iota(want.begin(), want.end(), 1);
  return seq == want;
}

std::vector<int> parents(const ProjectJoinTree &t) {
  std::vector<int> parent(static_cast<std::size_t>(t.node_count()) + 1, 0);
  for (const auto &n : t.nodes())
    for (int c : n.children)
      parent[c] = n.id;
  return parent;
}

VarOrder identity(int m) {
  std::vector<int> seq(static_cast<std::size_t>(m));
  std::iota(seq.begin(), seq.end(), 1);
  return VarOrder::from_sequence(seq, OrderHeuristic::Mcs);
}

} // namespace

TEST_CASE("heuristic names") {
  for (auto h : kAllOrderHeuristics)
    CHECK(parse_order_heuristic(to_string(h)) == h);
  CHECK(parse_order_heuristic("invlexp") == OrderHeuristic::InvLexP);
  CHECK_FALSE(parse_order_heuristic("lex"));
  CHECK(parse_rank_method("bm") == RankMethod::BouquetsMethod);
  CHECK(parse_cluster_method("list") == ClusterMethod::List);
  CHECK_FALSE(parse_cluster_method("forest"));
}

TEST_CASE("MCS on the one-model example") {
  const auto g = gaifman_graph(testing::one_model_formula());
  const auto mcs = var_order(OrderHeuristic::Mcs, g);
  CHECK(mcs.sequence() == std::vector<int>{1, 3, 4, 2, 5});
  const auto inv = var_order(OrderHeuristic::InvMcs, g);
  for (int x = 1; x <= 5; ++x)
    CHECK(inv(x) == 6 - mcs(x));
}

TEST_CASE("orders are bijections and inverses reverse their base") {
  const std::pair<OrderHeuristic, OrderHeuristic> pairs[] = {
      {OrderHeuristic::Mcs, OrderHeuristic::InvMcs},
      {OrderHeuristic::LexP, OrderHeuristic::InvLexP},
      {OrderHeuristic::LexM, OrderHeuristic::InvLexM},
      {OrderHeuristic::MinFill, OrderHeuristic::InvMinFill}};
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto g = testing::random_graph(rng, n, 0.35);
    for (auto h : kAllOrderHeuristics)
      CHECK(is_permutation_of_ranks(var_order(h, g, 3), n));
    for (auto [base, inv] : pairs) {
      const auto a = var_order(base, g);
      const auto b = var_order(inv, g);
      for (int x = 1; x <= n; ++x)
        CHECK(b(x) == n + 1 - a(x));
    }
  }
}

TEST_CASE("random order is a function of the seed") {
  std::mt19937_64 rng(6);
  const auto g = testing::random_graph(rng, 12, 0.3);
  CHECK(var_order(OrderHeuristic::Random, g, 42).rank == var_order(OrderHeuristic::Random, g, 42).rank);
  bool differs = false;
  for (std::uint64_t s = 1; s < 20 && !differs; ++s)
    differs = var_order(OrderHeuristic::Random, g, s).rank != var_order(OrderHeuristic::Random, g, 0).rank;
  CHECK(differs);
}

TEST_CASE("reversed MCS eliminates a chordal graph without fill") {
  Graph g(6);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {4, 6}})
    g.add_edge(u, v);
  auto seq = var_order(OrderHeuristic::Mcs, g).sequence();
  std::reverse(seq.begin(), seq.end());
  auto work = g;
  for (int v : seq) {
    CHECK(fill_in_count(work, v) == 0);
    eliminate_vertex(work, v);
  }
}

TEST_CASE("clause_rank") {
  const auto f = testing::one_model_formula();
  const auto rho = identity(5);
  CHECK(clause_rank(f.clause(4), rho, RankMethod::BucketElimination) == 3);
  CHECK(clause_rank(f.clause(4), rho, RankMethod::BouquetsMethod) == 4);
  CHECK(clause_rank(f.clause(3), rho, RankMethod::BucketElimination) ==
        clause_rank(f.clause(3), rho, RankMethod::BouquetsMethod));
  std::vector<int> be;
  for (const auto &c : f.clauses)
    be.push_back(clause_rank(c, rho, RankMethod::BucketElimination));
  CHECK(be == std::vector<int>{1, 1, 2, 3, 4, 5});
  const auto empty = parse_cnf("p cnf 3 1\n0\n");
  CHECK(clause_rank(empty.clause(1), identity(3), RankMethod::BucketElimination) == 3);
}

TEST_CASE("chosen_cluster") {
  const std::vector<int> none(8, 0);
  CHECK(chosen_cluster(std::vector<int>{1, 2}, 4, ClusterMethod::List, none, 7) == 5);
  CHECK(chosen_cluster(std::vector<int>{}, 2, ClusterMethod::Tree, none, 7) == 7);
  const std::vector<int> cluster_of_var{0, 1, 2, 5, 3, 3};
  CHECK(chosen_cluster(std::vector<int>{4}, 1, ClusterMethod::Tree, cluster_of_var, 5) == 3);
  CHECK(chosen_cluster(std::vector<int>{3, 4}, 1, ClusterMethod::Tree, cluster_of_var, 5) == 3);
  CHECK(chosen_cluster(std::vector<int>{3}, 3, ClusterMethod::Tree, cluster_of_var, 5) == 5);
}

TEST_CASE("build_tree on small formulas") {
  SUBCASE("one-model example, every configuration") {
    const auto f = testing::one_model_formula();
    for (const auto &cfg : testing::all_htb_configs()) {
      const auto t = build_tree(f, cfg);
      CHECK(validate(t, f).empty());
      CHECK(t.clause_count() == 6);
      CHECK(std::count_if(t.nodes().begin(), t.nodes().end(), [](const PjNode &n) { return n.leaf; }) == 6);
    }
  }
  SUBCASE("single unit clause") {
    const auto f = parse_cnf("p cnf 1 1\n1 0\n");
    const auto t = build_tree(f, {});
    REQUIRE(t.node_count() == 2);
    CHECK(t.root() == 2);
    CHECK(t.node(2).children == std::vector<int>{1});
    CHECK(t.node(2).projected == std::vector<int>{1});
    CHECK(width(t, f) == 1);
  }
  SUBCASE("no clauses") {
    const auto f = parse_cnf("p cnf 3 0\n");
    const auto t = build_tree(f, {});
    CHECK(validate(t, f).empty());
    CHECK(t.node(t.root()).projected == std::vector<int>{1, 2, 3});
  }
  SUBCASE("no variables") {
    CHECK_THROWS_AS(static_cast<void>(build_tree(parse_cnf("p cnf 0 0\n"), {})), InvalidInput);
  }
  SUBCASE("free variables land at the root") {
    const auto f = parse_cnf("p cnf 4 2\n1 2 0\n-2 0\n");
    for (const auto &cfg : testing::all_htb_configs()) {
      const auto t = build_tree(f, cfg);
      CHECK(validate(t, f).empty());
      const auto &root = t.node(t.root()).projected;
      CHECK(std::binary_search(root.begin(), root.end(), 3));
      CHECK(std::binary_search(root.begin(), root.end(), 4));
    }
  }
}

TEST_CASE("BE projects every variable by its own cluster") {
  const auto f = testing::one_model_formula();
  auto cfg = HtbConfig{OrderHeuristic::Mcs, RankMethod::BucketElimination, ClusterMethod::List, 0};
  const auto plan = build_tree_traced(f, cfg);
  for (const auto &n : plan.tree.nodes())
    for (int x : n.projected)
      CHECK(plan.cluster_of_node[n.id] <= plan.order(x));
}

TEST_CASE("build_tree on the corpus") {
  const auto corpus = testing::random_corpus(150, 31);
  for (const auto &f : corpus) {
    const auto used = f.used_vars();
    for (const auto &cfg : testing::all_htb_configs()) {
      const auto plan = build_tree_traced(f, cfg);
      const auto &t = plan.tree;
      REQUIRE(validate(t, f).empty());
      CHECK(build_tree(f, cfg) == t);

      // Clause ranks stay in range and clusters partition vars(φ).
      for (const auto &c : f.clauses) {
        CHECK(plan.clause_rank[c.id] >= 1);
        CHECK(plan.clause_rank[c.id] <= f.var_count);
      }
      for (int x = 1; x <= f.var_count; ++x)
        CHECK((plan.cluster_of_var[x] != 0) == std::binary_search(used.begin(), used.end(), x));

      if (cfg.rank == RankMethod::BucketElimination)
        for (const auto &n : t.nodes())
          for (int x : n.projected)
            if (std::binary_search(used.begin(), used.end(), x))
              CHECK(plan.cluster_of_node[n.id] <= plan.order(x));

      if (cfg.cluster == ClusterMethod::List) {
        const auto parent = parents(t);
        for (const auto &n : t.nodes())
          if (!n.leaf && n.id != t.root() && plan.cluster_of_node[n.id] != 0 &&
              plan.cluster_of_node[parent[n.id]] != 0)
            CHECK(plan.cluster_of_node[parent[n.id]] == plan.cluster_of_node[n.id] + 1);
      }
    }
  }
}

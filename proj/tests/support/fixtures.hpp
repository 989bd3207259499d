#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/graph.hpp"
#include "pjt/jointree.hpp"
#include "pjt/pbf.hpp"
#include "pjt/planner_htb.hpp"
#include "pjt/tree_decomposition.hpp"

namespace pjt::testing {

/// (x1 ∨ x3)(¬x1 ∨ ¬x3)(x2)(x3 ∨ x4)(¬x4)(x5); single model x1=0 x2=1 x3=1 x4=0 x5=1.
inline constexpr std::string_view kOneModelCnf = "c This CNF formula has one model.\n"
                                              "p cnf 5 6\n"
                                              "1 3 0\n"
                                              "-1 -3 0\n"
                                              "2 0\n"
                                              "3 4 0\n"
                                              "-4 0\n"
                                              "5 0\n";

/// Width-2 project-join tree of kOneModelCnf, branch lines in the published order.
inline constexpr std::string_view kOneModelJt = "c pjt for the formula above\n"
                                              "p jt 5 6 17\n"
                                              "8 3 e\n"
                                              "13 8 e 2\n"
                                              "10 5 e\n"
                                              "9 4 e\n"
                                              "7 1 2 e\n"
                                              "12 7 e 1\n"
                                              "14 9 12 e 3\n"
                                              "15 10 14 e 4\n"
                                              "11 6 e\n"
                                              "16 11 e 5\n"
                                              "17 13 15 16 e\n";

CnfFormula one_model_formula();
ProjectJoinTree one_model_tree();

/// Four clauses ¬x2, x3∨x4, ¬x1∨¬x3, x1∨x3∨¬x4 and the width-3 tree
/// n5{x2}(n1), n6{x1}(n4,n3), n7{x3,x4}(n6,n2), n8{}(n7,n5).
CnfFormula wide_example_formula();
ProjectJoinTree wide_example_tree();

/// The same literal weights on every variable.
WeightFunction uniform_weights(int var_count, double neg, double pos);
/// Each variable independently gets (pos 0.5, neg 1.5) or (pos 1.5, neg 0.5).
WeightFunction random_weights(int var_count, std::mt19937_64 &rng);

struct CnfShape {
  int min_vars = 3;
  int max_vars = 12;
  int min_clauses = 1;
  int max_clauses = 30;
  int max_clause_len = 4;
};

/// Random CNF with random weights; clauses are distinct-variable and may leave variables free.
CnfFormula random_cnf(std::mt19937_64 &rng, const CnfShape &shape = {});
std::vector<CnfFormula> random_corpus(int count, std::uint64_t seed, const CnfShape &shape = {});

/// All 36 heuristic combinations (random uses `seed`).
std::vector<HtbConfig> all_htb_configs(std::uint64_t seed = 7);

/// Σ over assignments, written independently of the library oracle.
double enumerate_wmc(const CnfFormula &formula, const WeightFunction &weights);

/// proj_{P(n)}(Φ(n) · W_{P(n)}) with dense tables, restricted to vars(n).
DenseFunction dense_node_valuation(const ProjectJoinTree &tree, const CnfFormula &formula,
                                   const WeightFunction &weights, int node);

/// Erdős–Rényi graph on 1..n.
Graph random_graph(std::mt19937_64 &rng, int n, double p);
/// Decomposition from a uniformly random elimination order.
TreeDecomposition random_td(std::mt19937_64 &rng, const Graph &g);

/// Random dense function over `vars` with entries drawn from `values`.
DenseFunction random_dense(std::mt19937_64 &rng, std::vector<int> vars, const std::vector<double> &values);
/// Random ascending subset of 1..universe of the given size.
std::vector<int> random_vars(std::mt19937_64 &rng, int universe, int size);

} // namespace pjt::testing

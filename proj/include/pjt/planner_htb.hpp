#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/jointree.hpp"

namespace pjt {

enum class OrderHeuristic { Random, Mcs, InvMcs, LexP, InvLexP, LexM, InvLexM, MinFill, InvMinFill };
enum class RankMethod { BucketElimination, BouquetsMethod };
enum class ClusterMethod { List, Tree };

inline constexpr std::array kAllOrderHeuristics{
    OrderHeuristic::Random, OrderHeuristic::Mcs,  OrderHeuristic::InvMcs,
    OrderHeuristic::LexP,   OrderHeuristic::InvLexP, OrderHeuristic::LexM,
    OrderHeuristic::InvLexM, OrderHeuristic::MinFill, OrderHeuristic::InvMinFill};

[[nodiscard]] std::string_view to_string(OrderHeuristic h) noexcept;
[[nodiscard]] std::string_view to_string(RankMethod r) noexcept;
[[nodiscard]] std::string_view to_string(ClusterMethod c) noexcept;
[[nodiscard]] std::optional<OrderHeuristic> parse_order_heuristic(std::string_view name) noexcept;
[[nodiscard]] std::optional<RankMethod> parse_rank_method(std::string_view name) noexcept;
[[nodiscard]] std::optional<ClusterMethod> parse_cluster_method(std::string_view name) noexcept;

struct HtbConfig {
  OrderHeuristic order = OrderHeuristic::InvLexP;
  RankMethod rank = RankMethod::BucketElimination;
  ClusterMethod cluster = ClusterMethod::Tree;
  std::uint64_t seed = 0; // Random only
};

/// Injection ρ from variables 1..m onto ranks 1..m.
struct VarOrder {
  std::vector<int> rank; // rank[x] for x in 1..m, index 0 unused
  OrderHeuristic heuristic = OrderHeuristic::Mcs;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(rank.size()) - 1; }
  [[nodiscard]] int operator()(int x) const { return rank.at(x); }
  /// Variables in ascending rank.
  [[nodiscard]] std::vector<int> sequence() const;
  /// Order assigning rank k to sequence[k-1].
  static VarOrder from_sequence(std::span<const int> sequence, OrderHeuristic heuristic);
};

/// Runs a variable-order heuristic on `g`. Ties go to the lowest index and
/// searches start from vertex 1; inverse heuristics reverse the base ranks.
[[nodiscard]] VarOrder var_order(OrderHeuristic heuristic, const Graph &g, std::uint64_t seed = 0);

/// ρ for the heuristic planner: `var_order` on the Gaifman graph.
[[nodiscard]] VarOrder cluster_var_order(const HtbConfig &config, const CnfFormula &formula);

/// Min (BE) or max (BM) rank over the clause's variables; `m` for an empty clause.
[[nodiscard]] int clause_rank(const Clause &clause, const VarOrder &rho, RankMethod method);

/// Parent cluster of the node built at iteration i < m. List: i + 1. Tree: the
/// first later cluster sharing a variable with the node, or m.
/// `cluster_of_var[x]` is the j with x ∈ X_j (0 for variables in no clause).
[[nodiscard]] int chosen_cluster(std::span<const int> node_vars, int i, ClusterMethod method,
                                 std::span<const int> cluster_of_var, int m);

/// The heuristic planner together with the bookkeeping needed to check its guarantees.
struct HtbPlan {
  ProjectJoinTree tree;
  VarOrder order;
  std::vector<int> clause_rank;      // by clause id, index 0 unused
  std::vector<int> cluster_of_var;   // X_i membership, 0 for free variables
  std::vector<int> cluster_of_node;  // iteration i that built each internal node, 0 for leaves
};

/// Throws InvalidInput when the formula has no variables.
[[nodiscard]] HtbPlan build_tree_traced(const CnfFormula &formula, const HtbConfig &config);
[[nodiscard]] ProjectJoinTree build_tree(const CnfFormula &formula, const HtbConfig &config);

} // namespace pjt

#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/jointree.hpp"
#include "pjt/pbf.hpp"

namespace pjt {

/// Diagram variable order σ: level[x] for x in 1..m, 1 = top. Index 0 unused.
struct DiagramOrder {
  std::vector<int> level;

  [[nodiscard]] int size() const noexcept { return level.empty() ? 0 : static_cast<int>(level.size()) - 1; }
  /// Variables from top to bottom.
  [[nodiscard]] std::vector<int> sequence() const;
  /// sequence[0] gets level 1. Throws std::invalid_argument unless it is a permutation of 1..n.
  [[nodiscard]] static DiagramOrder from_sequence(std::span<const int> sequence);

  friend bool operator==(const DiagramOrder &, const DiagramOrder &) = default;
};

/// MCS on the Gaifman graph, with the planner's tie-breaking.
[[nodiscard]] DiagramOrder default_order(const CnfFormula &formula);

/// Handle to a node in one AddManager.
struct Add {
  std::uint32_t manager = 0;
  std::uint32_t node = 0;

  friend bool operator==(const Add &, const Add &) = default;
};

/// Reduced ordered ADDs with real terminals over one diagram order. Nodes are
/// hash-consed, so equal functions get equal handles. Nothing is freed before
/// the manager is destroyed. Not thread-safe.
class AddManager {
public:
  explicit AddManager(DiagramOrder order);
  AddManager(const AddManager &) = delete;
  AddManager &operator=(const AddManager &) = delete;

  [[nodiscard]] const DiagramOrder &order() const noexcept { return order_; }

  /// -0.0 is stored as 0.0; other values are matched bit for bit.
  [[nodiscard]] Add terminal(double value);
  /// Reduced node: returns `low` when low == high. Throws InvalidInput for an
  /// unknown variable and std::invalid_argument when a child's top variable is
  /// not strictly below `x`.
  [[nodiscard]] Add decision(int x, Add low, Add high);
  /// λ_c. The empty clause gives terminal 0 and a tautology terminal 1.
  [[nodiscard]] Add from_clause(const Clause &clause);

  [[nodiscard]] Add product(Add f, Add g);
  [[nodiscard]] Add sum(Add f, Add g);
  [[nodiscard]] Add scale(Add f, double factor);
  /// f|x=0 · w.neg + f|x=1 · w.pos. Throws InvalidInput for an unknown variable.
  [[nodiscard]] Add project_weighted(Add f, int x, const LiteralWeight &w);

  [[nodiscard]] bool is_terminal(Add f) const;
  /// Throws std::logic_error for a decision node.
  [[nodiscard]] double value(Add f) const;
  /// Top variable of a decision node, 0 for a terminal.
  [[nodiscard]] int top_var(Add f) const;
  [[nodiscard]] Add low(Add f) const;
  [[nodiscard]] Add high(Add f) const;

  /// Value at the assignment where exactly `true_vars` hold.
  [[nodiscard]] double evaluate(Add f, std::span<const int> true_vars) const;
  /// Table over `vars` (ascending). Throws InvalidInput unless vars ⊇ support(f).
  [[nodiscard]] DenseFunction to_dense(Add f, std::vector<int> vars) const;
  /// Distinct nodes reachable from f, terminals included.
  [[nodiscard]] std::size_t node_count(Add f) const;
  /// Variables tested anywhere in f, ascending.
  [[nodiscard]] std::vector<int> support(Add f) const;
  /// Nodes held by the unique table.
  [[nodiscard]] std::size_t store_size() const noexcept { return nodes_.size(); }

private:
  struct Node {
    int var = 0; // 0 for terminals
    std::uint32_t low = 0;
    std::uint32_t high = 0;
    double value = 0;
  };
  struct DecisionKey {
    int var;
    std::uint32_t low;
    std::uint32_t high;
    friend bool operator==(const DecisionKey &, const DecisionKey &) = default;
  };
  struct DecisionKeyHash {
    std::size_t operator()(const DecisionKey &k) const noexcept;
  };
  enum class Op : std::uint64_t { Product = 1, Sum = 2 };

  void check_owned(Add f) const;
  [[nodiscard]] int level_of(std::uint32_t node) const;
  [[nodiscard]] std::uint32_t make_terminal(double value);
  [[nodiscard]] std::uint32_t make_decision(int x, std::uint32_t low, std::uint32_t high);
  [[nodiscard]] std::uint32_t apply(Op op, std::uint32_t f, std::uint32_t g);
  [[nodiscard]] Add handle(std::uint32_t node) const noexcept { return {id_, node}; }

  DiagramOrder order_;
  std::uint32_t id_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> terminals_;
  std::unordered_map<DecisionKey, std::uint32_t, DecisionKeyHash> decisions_;
  std::unordered_map<std::uint64_t, std::uint32_t> apply_cache_;
};

/// The valuation recurrence over ADDs: leaves are clause diagrams, internal nodes multiply their
/// children in ascending id and project π in ascending level.
class AddExecutor {
public:
  /// Throws InvalidInput unless the order ranks exactly the formula's variables.
  AddExecutor(const CnfFormula &formula, DiagramOrder order);

  [[nodiscard]] AddManager &manager() noexcept { return manager_; }

  /// The diagram of every node, indexed by node id (index 0 unused).
  /// Throws InvalidInput if the tree does not validate.
  [[nodiscard]] std::vector<Add> valuate_all(const ProjectJoinTree &tree, const WeightFunction &weights);
  /// Value of the root, which must reduce to a terminal.
  [[nodiscard]] double valuate(const ProjectJoinTree &tree, const WeightFunction &weights);

private:
  const CnfFormula &formula_;
  AddManager manager_;
};

/// One-shot valuation with formula.weights and the default order.
[[nodiscard]] double valuate_add(const ProjectJoinTree &tree, const CnfFormula &formula);

} // namespace pjt

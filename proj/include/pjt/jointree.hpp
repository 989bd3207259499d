#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/tree_decomposition.hpp"
#include "pjt/violation.hpp"

namespace pjt {

/// Node of a project-join tree. Ids follow JT numbering: leaves 1..l carry
/// clause ids, internal nodes l+1..n carry children and projected variables.
struct PjNode {
  int id = 0;
  bool leaf = false;
  int clause_id = 0;           // leaves only
  std::vector<int> children;   // internal only, ascending
  std::vector<int> projected;  // internal only, ascending (π)

  friend bool operator==(const PjNode &, const PjNode &) = default;
};

/// Project-join tree (T, r, γ, π). Structural soundness is checked by
/// validate(), not enforced on construction, so malformed trees can be
/// represented and diagnosed.
class ProjectJoinTree {
public:
  ProjectJoinTree() = default;
  /// Tree with leaves 1..clause_count (leaf i maps to clause i) and no internal nodes yet.
  ProjectJoinTree(int var_count, int clause_count);
  /// Arbitrary node list; nodes[i] should have id i+1.
  ProjectJoinTree(int var_count, int clause_count, std::vector<PjNode> nodes, int root);

  /// Appends an internal node with the next id and makes it the root.
  int add_internal(std::vector<int> children, std::vector<int> projected);

  [[nodiscard]] int var_count() const noexcept { return var_count_; }
  [[nodiscard]] int clause_count() const noexcept { return clause_count_; }
  [[nodiscard]] int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] int root() const noexcept { return root_; }
  void set_root(int id) noexcept { root_ = id; }

  [[nodiscard]] const PjNode &node(int id) const { return nodes_.at(static_cast<std::size_t>(id) - 1); }
  [[nodiscard]] PjNode &node(int id) { return nodes_.at(static_cast<std::size_t>(id) - 1); }
  [[nodiscard]] bool is_leaf(int id) const { return node(id).leaf; }
  [[nodiscard]] const std::vector<PjNode> &nodes() const noexcept { return nodes_; }

  friend bool operator==(const ProjectJoinTree &, const ProjectJoinTree &) = default;

private:
  int var_count_ = 0;
  int clause_count_ = 0;
  std::vector<PjNode> nodes_;
  int root_ = 0;
};

/// Every way `tree` fails to be a project-join tree of `formula`. Empty means valid.
/// A childless internal root is accepted only when the formula has no clauses.
[[nodiscard]] Violations validate(const ProjectJoinTree &tree, const CnfFormula &formula);

/// vars(n) for every node, indexed by id (index 0 unused). Requires a valid tree.
[[nodiscard]] std::vector<std::vector<int>> all_node_vars(const ProjectJoinTree &tree,
                                                          const CnfFormula &formula);
[[nodiscard]] std::vector<int> node_vars(const ProjectJoinTree &tree, const CnfFormula &formula, int node);

/// |vars(n)| for leaves, |vars(n) ∪ π(n)| for internal nodes.
[[nodiscard]] std::vector<int> node_sizes(const ProjectJoinTree &tree, const CnfFormula &formula);
[[nodiscard]] int width(const ProjectJoinTree &tree, const CnfFormula &formula);

/// Φ(n): clause ids at the leaves below n, ascending.
[[nodiscard]] std::vector<int> subtree_clauses(const ProjectJoinTree &tree, int node);
/// P(n): variables projected anywhere below and at n, ascending.
[[nodiscard]] std::vector<int> subtree_projected(const ProjectJoinTree &tree, int node);

/// Parses a JT document. The root is node n. Throws ParseError.
[[nodiscard]] ProjectJoinTree read_jt(std::string_view text);
/// JT text with branch lines in ascending id. Requires the root to be node n.
[[nodiscard]] std::string write_jt(const ProjectJoinTree &tree);

/// Decomposition of the Gaifman graph with the same shape: bag of a node is
/// vars(n) (leaves) or vars(n) ∪ π(n) (internal). Bag i is node i.
/// Throws InvalidInput if the tree does not validate.
[[nodiscard]] TreeDecomposition tree_to_td(const ProjectJoinTree &tree, const CnfFormula &formula);

} // namespace pjt

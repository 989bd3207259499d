#pragma once

#include <vector>

#include "pjt/formula.hpp"
#include "pjt/tree_decomposition.hpp"

namespace pjt {

inline constexpr int kMaxBruteForceVars = 24;

/// Σ_τ φ(τ) W(τ) by enumerating all 2^m assignments. Throws ResourceError above kMaxBruteForceVars.
[[nodiscard]] double brute_force_wmc(const CnfFormula &formula, const WeightFunction &weights);
[[nodiscard]] double brute_force_wmc(const CnfFormula &formula);

enum class NiceKind { Leaf, Intro, Removal, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  std::vector<int> bag;      // ascending
  int var = 0;               // the introduced or removed variable
  std::vector<int> children; // indices into NiceTd::nodes, always smaller than this node's

  friend bool operator==(const NiceNode &, const NiceNode &) = default;
};

/// Rooted nice tree decomposition. Nodes are stored children first; the root
/// (empty bag) is the last node.
struct NiceTd {
  std::vector<NiceNode> nodes;

  [[nodiscard]] int root() const noexcept { return static_cast<int>(nodes.size()) - 1; }
  /// Largest bag minus one.
  [[nodiscard]] int width() const;
  friend bool operator==(const NiceTd &, const NiceTd &) = default;
};

/// Normalizes `td` rooted at `root_bag`. Each child chain first removes the
/// child's extra variables (descending) and then introduces the parent's
/// missing ones (ascending); several children meet in a left fold of joins;
/// the root bag is emptied by removals in descending order. Width is unchanged.
/// Throws InvalidInput if `td` is not a tree with the running intersection property.
[[nodiscard]] NiceTd make_nice(const TreeDecomposition &td, int root_bag = 1);

/// The nice decomposition as a plain one: bag i+1 is node i, edges join each
/// node to its children. Re-normalizing it rooted at its last bag gives the same nice TD.
[[nodiscard]] TreeDecomposition nice_to_td(const NiceTd &nice, int vertex_count);

/// Weighted model count by dynamic programming over bag-keyed tables. Weights
/// are applied where a variable is removed; a clause is enforced at every
/// removal of one of its variables whose child bag holds the whole clause.
/// Variables in no bag contribute w.neg + w.pos each.
/// Throws InvalidInput when a clause is never enforced or the nice TD is malformed.
[[nodiscard]] double nice_td_wmc(const CnfFormula &formula, const WeightFunction &weights, const NiceTd &nice);

/// nice_td_wmc over make_nice(build_td_minfill(Gaifman(φ))) with formula.weights.
[[nodiscard]] double nice_td_wmc(const CnfFormula &formula);

} // namespace pjt

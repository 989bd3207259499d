#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/jointree.hpp"
#include "pjt/pbf.hpp"

namespace pjt {

/// Dense tensor with one Boolean index per variable; same layout as DenseFunction.
using Tensor = DenseFunction;

struct ContractionStats {
  int max_rank = 0;        // most indices on any tensor seen (leaves and contraction results)
  std::uint64_t flops = 0; // multiplies plus adds, saturating

  void observe(int rank) noexcept {
    if (rank > max_rank)
      max_rank = rank;
  }
  friend bool operator==(const ContractionStats &, const ContractionStats &) = default;
};

/// f ⊗ g: the product with every shared index summed out.
/// Costs 2^(R+S) multiplies and 2^R (2^S - 1) adds for R result and S shared indices.
/// Throws ResourceError when the result exceeds kMaxDenseVars.
[[nodiscard]] Tensor contract(const Tensor &f, const Tensor &g, ContractionStats *stats = nullptr);

/// ■_X: 1 on the all-false and all-true assignments, 0 elsewhere.
/// Throws std::invalid_argument for an empty set.
[[nodiscard]] Tensor copy_tensor(std::vector<int> vars);

/// Same tensor with index `from` relabelled `to` (`to` must be unused).
[[nodiscard]] Tensor rename(const Tensor &f, int from, int to);

/// f · g by contraction alone: shared indices z are split into fresh z', z''
/// and rejoined through ■{z, z', z''}.
[[nodiscard]] Tensor product_via_copy(const Tensor &f, const Tensor &g, ContractionStats *stats = nullptr);

/// proj_Z(f · g) where Z is summed directly and the other shared indices go
/// through copy tensors. Throws std::invalid_argument unless Z ⊆ vars(f) ∩ vars(g).
[[nodiscard]] Tensor project_product(const Tensor &f, const Tensor &g, std::span<const int> z,
                                     ContractionStats *stats = nullptr);

struct TensorValuation {
  double value = 0;
  ContractionStats stats;
};

/// W-valuation of the root with tensors. Children fold in ascending id; a
/// projected variable found in one child is summed against W_x on that child,
/// one found in several is weighted on its last child and summed in that
/// child's fold step, one found in none contributes w.neg + w.pos.
/// Throws InvalidInput for an invalid tree and ResourceError (naming the node)
/// when a tensor would exceed kMaxDenseVars.
[[nodiscard]] TensorValuation valuate_tensor(const ProjectJoinTree &tree, const CnfFormula &formula,
                                             const WeightFunction &weights);
[[nodiscard]] TensorValuation valuate_tensor(const ProjectJoinTree &tree, const CnfFormula &formula);

/// Exact flop count of valuate_tensor without touching any table.
[[nodiscard]] std::uint64_t estimate_flops(const ProjectJoinTree &tree, const CnfFormula &formula);
/// Flops and max rank valuate_tensor would report.
[[nodiscard]] ContractionStats estimate_stats(const ProjectJoinTree &tree, const CnfFormula &formula);

} // namespace pjt

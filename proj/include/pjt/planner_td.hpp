#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pjt/formula.hpp"
#include "pjt/jointree.hpp"
#include "pjt/tree_decomposition.hpp"

namespace pjt {

/// Instrumentation for td_to_pjt: every Process(n, ℓ) call must return nodes
/// whose variables lie inside ℓ.
struct TdConversionTrace {
  std::size_t process_calls = 0;
  std::vector<std::string> bound_violations;
};

/// Decomposition-guided planning. The TD root is the largest bag (lowest id on ties), children
/// are processed in ascending bag id, and each clause hangs below the first
/// processed bag covering it. Variables that end up in no π label (those in
/// no clause) are projected one per node on a chain ending at the root, which
/// keeps the width within tw + 1; the chain also supplies a single root when
/// the recursion does not return one internal node.
/// Throws InvalidInput if the decomposition is not one of the Gaifman graph
/// (vertex coverage is waived for variables in no clause).
[[nodiscard]] ProjectJoinTree td_to_pjt(const CnfFormula &formula, const TreeDecomposition &td,
                                        TdConversionTrace *trace = nullptr);

enum class CostModel { Add, Tensor };

[[nodiscard]] std::string_view to_string(CostModel model) noexcept;
[[nodiscard]] std::optional<CostModel> parse_cost_model(std::string_view name) noexcept;

/// 2^width for ADD execution; exact multiply-add count for tensor execution.
[[nodiscard]] double estimate_cost(const ProjectJoinTree &tree, const CnfFormula &formula, CostModel model);

/// Yields successive PACE documents; nullopt ends the stream.
using TdDocumentSource = std::function<std::optional<std::string>()>;

struct StreamOptions {
  CostModel cost = CostModel::Add;
  double kappa = 1e-7; // seconds of planning allowed per unit of estimated cost
  /// Seconds since planning began; a steady clock when empty.
  std::function<double()> elapsed;
};

struct StreamResult {
  ProjectJoinTree tree;
  TreeDecomposition td;
  double cost = 0;
  int chosen = 0;   // 1-based position of the winning document in the stream
  int consumed = 0; // documents read
  int rejected = 0; // documents that failed to parse or convert
};

/// Converts decompositions as they arrive, keeps the cheapest tree, and stops
/// once elapsed time reaches kappa times the best cost or the stream ends.
/// Throws InvalidInput for an empty stream or when every document is rejected.
[[nodiscard]] StreamResult best_of_stream(const CnfFormula &formula, const TdDocumentSource &source,
                                          const StreamOptions &options);

} // namespace pjt

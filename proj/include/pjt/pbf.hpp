#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pjt/formula.hpp"

namespace pjt {

/// Largest domain a dense table may have.
inline constexpr int kMaxDenseVars = 30;

/// Pseudo-Boolean function f: 2^vars -> R stored as a full table.
///
/// `vars` is strictly ascending. Entry `i` of the table is the value at the
/// assignment where vars[k] is true iff bit k of `i` is set.
class DenseFunction {
public:
  /// The constant function over the empty domain.
  explicit DenseFunction(double constant = 1.0) : table_{constant} {}
  /// Throws std::invalid_argument if `vars` is not strictly ascending or the
  /// table length is not 2^|vars|, ResourceError above kMaxDenseVars.
  DenseFunction(std::vector<int> vars, std::vector<double> table);
  /// All-`fill` function over `vars`.
  static DenseFunction filled(std::vector<int> vars, double fill);

  [[nodiscard]] const std::vector<int> &vars() const noexcept { return vars_; }
  [[nodiscard]] const std::vector<double> &table() const noexcept { return table_; }
  [[nodiscard]] std::vector<double> &table() noexcept { return table_; }
  [[nodiscard]] int arity() const noexcept { return static_cast<int>(vars_.size()); }
  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
  [[nodiscard]] bool contains(int x) const;
  /// Bit position of `x` in the index encoding, or -1.
  [[nodiscard]] int position(int x) const;

  [[nodiscard]] double operator[](std::size_t index) const { return table_[index]; }
  [[nodiscard]] double &operator[](std::size_t index) { return table_[index]; }
  /// Value at the assignment that sets exactly `true_vars` (ascending; others
  /// outside the domain are ignored).
  [[nodiscard]] double at(std::span<const int> true_vars) const;
  /// Value of a single-entry (empty-domain) function.
  [[nodiscard]] double scalar() const;

  friend bool operator==(const DenseFunction &, const DenseFunction &) = default;

private:
  std::vector<int> vars_;
  std::vector<double> table_;
};

/// (f * g)(τ) = f(τ ∩ X) * g(τ ∩ Y) over X ∪ Y.
[[nodiscard]] DenseFunction product(const DenseFunction &f, const DenseFunction &g);

/// Sums out `x`. Throws std::invalid_argument if x is not in the domain.
[[nodiscard]] DenseFunction project(const DenseFunction &f, int x);

/// Sums out every variable of `xs` that is in the domain of `f`.
[[nodiscard]] DenseFunction project_all(const DenseFunction &f, std::span<const int> xs);

/// f|x=0 * w.neg + f|x=1 * w.pos.
[[nodiscard]] DenseFunction project_weighted(const DenseFunction &f, int x, const LiteralWeight &w);

/// W_x as a function over {x}: [w.neg, w.pos].
[[nodiscard]] DenseFunction weight_function(int x, const LiteralWeight &w);

/// Indicator of the clause over its variables. Empty clause: constant 0.
[[nodiscard]] DenseFunction clause_function(const Clause &clause);

/// Checks proj_x(f * g) == (proj_x f) * g entrywise within tolerance.
/// Requires x in vars(f) and x not in vars(g); throws std::invalid_argument otherwise.
[[nodiscard]] bool early_projection_check(const DenseFunction &f, const DenseFunction &g, int x);

/// Same domain and every entry approx_equal.
[[nodiscard]] bool approx_equal(const DenseFunction &f, const DenseFunction &g,
                                double rel = 1e-9, double abs = 1e-12);

/// Sorted union / intersection / difference of ascending variable lists.
[[nodiscard]] std::vector<int> var_union(std::span<const int> a, std::span<const int> b);
[[nodiscard]] std::vector<int> var_intersection(std::span<const int> a, std::span<const int> b);
[[nodiscard]] std::vector<int> var_difference(std::span<const int> a, std::span<const int> b);

/// For each variable of `sub` (a subset of `super`), its bit mask in `super`'s
/// encoding. Used to scatter/gather indices between domains.
[[nodiscard]] std::vector<std::uint64_t> embed_masks(std::span<const int> sub,
                                                     std::span<const int> super);

/// Index into `sub`'s table of the restriction of `super_index` (an index in
/// the domain whose masks were produced by embed_masks).
[[nodiscard]] inline std::uint64_t restrict_index(std::uint64_t super_index,
                                                  std::span<const std::uint64_t> masks) {
  std::uint64_t sub = 0;
  for (std::size_t k = 0; k < masks.size(); ++k)
    if (super_index & masks[k])
      sub |= std::uint64_t{1} << k;
  return sub;
}

} // namespace pjt

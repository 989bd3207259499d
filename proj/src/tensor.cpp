#include "pjt/tensor.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "pjt/errors.hpp"

namespace pjt {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
  return a > kSaturated - b ? kSaturated : a + b;
}

/// 2^R (2^(S+1) - 1): one multiply per (result, shared) pair and one add per
/// shared assignment beyond the first.
std::uint64_t contraction_flops(std::size_t result, std::size_t shared) noexcept {
  if (result + shared + 1 >= 64)
    return kSaturated;
  return (std::uint64_t{1} << result) * ((std::uint64_t{1} << (shared + 1)) - 1);
}

std::uint64_t scatter(std::uint64_t bits, std::span<const std::uint64_t> masks) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < masks.size(); ++k)
    if (bits & (std::uint64_t{1} << k))
      out |= masks[k];
  return out;
}

/// Operations on real tables.
class DenseBackend {
public:
  using T = Tensor;

  explicit DenseBackend(const WeightFunction &weights) : weights_(weights) {}

  T leaf(const Clause &clause) {
    auto t = clause_function(clause);
    stats.observe(t.arity());
    return t;
  }
  T weight(int x) const { return weight_function(x, weights_[x]); }
  static T unit() { return Tensor(1.0); }
  static T copy(std::vector<int> vars) { return copy_tensor(std::move(vars)); }
  static T relabel(const T &t, int from, int to) { return rename(t, from, to); }
  static const std::vector<int> &vars(const T &t) { return t.vars(); }
  T join(const T &f, const T &g) { return contract(f, g, &stats); }

  ContractionStats stats;

private:
  const WeightFunction &weights_;
};

/// Same schedule over index sets only, for cost estimation.
class SymbolicBackend {
public:
  using T = std::vector<int>;

  T leaf(const Clause &clause) {
    auto vars = clause_vars(clause);
    stats.observe(static_cast<int>(vars.size()));
    return vars;
  }
  static T weight(int x) { return {x}; }
  static T unit() { return {}; }
  static T copy(std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  }
  static T relabel(T t, int from, int to) {
    std::replace(t.begin(), t.end(), from, to);
    std::sort(t.begin(), t.end());
    return t;
  }
  static const std::vector<int> &vars(const T &t) { return t; }
  T join(const T &f, const T &g) {
    const auto shared = var_intersection(f, g);
    auto result = var_difference(var_union(f, g), shared);
    stats.flops = saturating_add(stats.flops, contraction_flops(result.size(), shared.size()));
    stats.observe(static_cast<int>(result.size()));
    return result;
  }

  ContractionStats stats;
};

template <class B>
typename B::T project_product_with(B &backend, typename B::T f, typename B::T g, std::span<const int> z) {
  const auto &fv = B::vars(f);
  const auto &gv = B::vars(g);
  const auto shared = var_intersection(fv, gv);
  if (!std::includes(shared.begin(), shared.end(), z.begin(), z.end()))
    throw std::invalid_argument("summed indices must be shared by both tensors");
  const auto keep = var_difference(shared, z);
  if (keep.empty())
    return backend.join(f, g);

  int fresh = 1;
  if (!fv.empty())
    fresh = std::max(fresh, fv.back() + 1);
  if (!gv.empty())
    fresh = std::max(fresh, gv.back() + 1);

  // Copy tensors attach to the smaller operand.
  const bool swap = B::vars(g).size() < B::vars(f).size();
  auto a = swap ? std::move(g) : std::move(f);
  auto c = swap ? std::move(f) : std::move(g);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    a = B::relabel(a, keep[k], fresh + 2 * static_cast<int>(k));
    c = B::relabel(c, keep[k], fresh + 2 * static_cast<int>(k) + 1);
  }
  // The last copy tensor goes on after the join so its two halves meet there.
  const auto copy_at = [&](std::size_t k) {
    const int z1 = fresh + 2 * static_cast<int>(k);
    return B::copy({keep[k], z1, z1 + 1});
  };
  for (std::size_t k = 0; k + 1 < keep.size(); ++k)
    a = backend.join(a, copy_at(k));
  a = backend.join(a, c);
  return backend.join(a, copy_at(keep.size() - 1));
}

template <class B>
typename B::T valuate_node(B &backend, const PjNode &node, std::vector<typename B::T> kids) {
  std::vector<std::vector<int>> summed_at(kids.size());
  std::vector<int> absent;
  for (int x : node.projected) {
    std::vector<std::size_t> holders;
    for (std::size_t k = 0; k < kids.size(); ++k)
      if (std::binary_search(B::vars(kids[k]).begin(), B::vars(kids[k]).end(), x))
        holders.push_back(k);
    if (holders.empty()) {
      absent.push_back(x);
    } else if (holders.size() == 1) {
      kids[holders[0]] = backend.join(kids[holders[0]], backend.weight(x));
    } else {
      auto &last = kids[holders.back()];
      last = project_product_with(backend, std::move(last), backend.weight(x), {});
      summed_at[holders.back()].push_back(x);
    }
  }

  auto acc = kids.empty() ? B::unit() : std::move(kids[0]);
  for (std::size_t k = 1; k < kids.size(); ++k)
    acc = project_product_with(backend, std::move(acc), std::move(kids[k]), summed_at[k]);
  for (int x : absent)
    acc = backend.join(acc, backend.join(backend.weight(x), B::copy({x})));
  return acc;
}

template <class B> typename B::T run_schedule(B &backend, const ProjectJoinTree &tree, const CnfFormula &formula) {
  if (const auto problems = validate(tree, formula); !problems.empty())
    throw InvalidInput("invalid project-join tree: " + problems.front().message);
  std::vector<std::optional<typename B::T>> done(static_cast<std::size_t>(tree.node_count()) + 1);
  for (const auto &node : tree.nodes()) {
    try {
      if (node.leaf) {
        done[node.id] = backend.leaf(formula.clause(node.clause_id));
        continue;
      }
      std::vector<typename B::T> kids;
      for (int c : node.children) {
        kids.push_back(std::move(*done[c]));
        done[c].reset();
      }
      done[node.id] = valuate_node(backend, node, std::move(kids));
    } catch (const ResourceError &e) {
      throw ResourceError("node " + std::to_string(node.id) + ": " + e.what());
    }
  }
  return std::move(*done[tree.root()]);
}

} // namespace

Tensor contract(const Tensor &f, const Tensor &g, ContractionStats *stats) {
  const auto all = var_union(f.vars(), g.vars());
  const auto shared = var_intersection(f.vars(), g.vars());
  auto result = var_difference(all, shared);
  if (result.size() > static_cast<std::size_t>(kMaxDenseVars))
    throw ResourceError("contraction result over " + std::to_string(result.size()) +
                        " indices exceeds the cap of " + std::to_string(kMaxDenseVars));
  const auto result_masks = embed_masks(result, all);
  const auto shared_masks = embed_masks(shared, all);
  const auto f_masks = embed_masks(f.vars(), all);
  const auto g_masks = embed_masks(g.vars(), all);

  const std::uint64_t outer = std::uint64_t{1} << result.size();
  const std::uint64_t inner = std::uint64_t{1} << shared.size();
  std::vector<double> table(outer);
  std::uint64_t flops = 0;
  for (std::uint64_t r = 0; r < outer; ++r) {
    const std::uint64_t base = scatter(r, result_masks);
    double sum = 0;
    for (std::uint64_t s = 0; s < inner; ++s) {
      const std::uint64_t u = base | scatter(s, shared_masks);
      const double term = f[restrict_index(u, f_masks)] * g[restrict_index(u, g_masks)];
      ++flops;
      if (s == 0) {
        sum = term;
      } else {
        sum += term;
        ++flops;
      }
    }
    table[r] = sum;
  }
  if (stats) {
    stats->flops = saturating_add(stats->flops, flops);
    stats->observe(static_cast<int>(result.size()));
  }
  return Tensor(std::move(result), std::move(table));
}

Tensor copy_tensor(std::vector<int> vars) {
  if (vars.empty())
    throw std::invalid_argument("copy tensor needs at least one index");
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  auto t = Tensor::filled(std::move(vars), 0.0);
  t[0] = 1.0;
  t[t.size() - 1] = 1.0;
  return t;
}

Tensor rename(const Tensor &f, int from, int to) {
  const int k = f.position(from);
  if (k < 0)
    throw std::invalid_argument("index " + std::to_string(from) + " is not on the tensor");
  if (f.contains(to))
    throw std::invalid_argument("index " + std::to_string(to) + " is already on the tensor");
  auto vars = f.vars();
  vars[k] = to;
  std::sort(vars.begin(), vars.end());
  std::vector<std::uint64_t> moved;
  for (int x : f.vars())
    moved.push_back(std::uint64_t{1} << std::distance(vars.begin(),
                                                      std::lower_bound(vars.begin(), vars.end(), x == from ? to : x)));
  std::vector<double> table(f.size());
  for (std::uint64_t i = 0; i < f.size(); ++i)
    table[scatter(i, moved)] = f[i];
  return Tensor(std::move(vars), std::move(table));
}

Tensor product_via_copy(const Tensor &f, const Tensor &g, ContractionStats *stats) {
  return project_product(f, g, {}, stats);
}

Tensor project_product(const Tensor &f, const Tensor &g, std::span<const int> z, ContractionStats *stats) {
  static const WeightFunction no_weights;
  DenseBackend backend(no_weights);
  auto result = project_product_with(backend, f, g, z);
  if (stats) {
    stats->flops = saturating_add(stats->flops, backend.stats.flops);
    stats->observe(backend.stats.max_rank);
  }
  return result;
}

TensorValuation valuate_tensor(const ProjectJoinTree &tree, const CnfFormula &formula,
                               const WeightFunction &weights) {
  if (weights.var_count() < formula.var_count)
    throw InvalidInput("weight function covers fewer variables than the formula");
  DenseBackend backend(weights);
  const auto root = run_schedule(backend, tree, formula);
  return {root.scalar(), backend.stats};
}

TensorValuation valuate_tensor(const ProjectJoinTree &tree, const CnfFormula &formula) {
  return valuate_tensor(tree, formula, formula.weights);
}

ContractionStats estimate_stats(const ProjectJoinTree &tree, const CnfFormula &formula) {
  SymbolicBackend backend;
  static_cast<void>(run_schedule(backend, tree, formula));
  return backend.stats;
}

std::uint64_t estimate_flops(const ProjectJoinTree &tree, const CnfFormula &formula) {
  return estimate_stats(tree, formula).flops;
}

} // namespace pjt

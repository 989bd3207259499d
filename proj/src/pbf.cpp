#include "pjt/pbf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"

namespace pjt {

namespace {

void check_arity(std::size_t arity) {
  if (arity > static_cast<std::size_t>(kMaxDenseVars))
    throw ResourceError("dense table over " + std::to_string(arity) + " variables exceeds the cap of " +
                        std::to_string(kMaxDenseVars));
}

} // namespace

DenseFunction::DenseFunction(std::vector<int> vars, std::vector<double> table)
    : vars_(std::move(vars)), table_(std::move(table)) {
  check_arity(vars_.size());
  if (std::adjacent_find(vars_.begin(), vars_.end(), std::greater_equal<>()) != vars_.end())
    throw std::invalid_argument("dense function variables must be strictly ascending");
  if (table_.size() != (std::size_t{1} << vars_.size()))
    throw std::invalid_argument("dense table length must be 2^|vars|");
}

DenseFunction DenseFunction::filled(std::vector<int> vars, double fill) {
  check_arity(vars.size());
  const std::size_t size = std::size_t{1} << vars.size();
  return DenseFunction(std::move(vars), std::vector<double>(size, fill));
}

bool DenseFunction::contains(int x) const { return std::binary_search(vars_.begin(), vars_.end(), x); }

int DenseFunction::position(int x) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
  return it != vars_.end() && *it == x ? static_cast<int>(it - vars_.begin()) : -1;
}

double DenseFunction::at(std::span<const int> true_vars) const {
  std::size_t index = 0;
  for (int x : true_vars)
    if (int k = position(x); k >= 0)
      index |= std::size_t{1} << k;
  return table_[index];
}

double DenseFunction::scalar() const {
  if (!vars_.empty())
    throw std::logic_error("scalar() on a function with a nonempty domain");
  return table_.front();
}

std::vector<int> var_union(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> var_intersection(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> var_difference(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> embed_masks(std::span<const int> sub, std::span<const int> super) {
  std::vector<std::uint64_t> masks;
  masks.reserve(sub.size());
  for (int x : sub) {
    auto it = std::lower_bound(super.begin(), super.end(), x);
    if (it == super.end() || *it != x)
      throw std::invalid_argument("variable " + std::to_string(x) + " missing from superset domain");
    masks.push_back(std::uint64_t{1} << (it - super.begin()));
  }
  return masks;
}

DenseFunction product(const DenseFunction &f, const DenseFunction &g) {
  auto vars = var_union(f.vars(), g.vars());
  check_arity(vars.size());
  const auto f_masks = embed_masks(f.vars(), vars);
  const auto g_masks = embed_masks(g.vars(), vars);
  const std::size_t size = std::size_t{1} << vars.size();
  std::vector<double> table(size);
  for (std::uint64_t i = 0; i < size; ++i)
    table[i] = f[restrict_index(i, f_masks)] * g[restrict_index(i, g_masks)];
  return DenseFunction(std::move(vars), std::move(table));
}

DenseFunction project_weighted(const DenseFunction &f, int x, const LiteralWeight &w) {
  const int k = f.position(x);
  if (k < 0)
    throw std::invalid_argument("cannot project variable " + std::to_string(x) + " outside the domain");
  std::vector<int> vars = f.vars();
  vars.erase(vars.begin() + k);
  const std::uint64_t low_mask = (std::uint64_t{1} << k) - 1;
  const std::size_t size = std::size_t{1} << vars.size();
  std::vector<double> table(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t zero = ((i & ~low_mask) << 1) | (i & low_mask);
    const std::uint64_t one = zero | (std::uint64_t{1} << k);
    table[i] = f[zero] * w.neg + f[one] * w.pos;
  }
  return DenseFunction(std::move(vars), std::move(table));
}

DenseFunction project(const DenseFunction &f, int x) { return project_weighted(f, x, LiteralWeight{}); }

DenseFunction project_all(const DenseFunction &f, std::span<const int> xs) {
  DenseFunction result = f;
  for (int x : xs)
    if (result.contains(x))
      result = project(result, x);
  return result;
}

DenseFunction weight_function(int x, const LiteralWeight &w) { return DenseFunction({x}, {w.neg, w.pos}); }

DenseFunction clause_function(const Clause &clause) {
  auto vars = clause_vars(clause);
  if (vars.empty())
    return DenseFunction(0.0);
  if (clause.tautological())
    return DenseFunction::filled(std::move(vars), 1.0);
  // Exactly one assignment falsifies a non-tautological clause: every literal false.
  std::size_t falsifying = 0;
  for (const auto &lit : clause.literals)
    if (!lit.positive)
      falsifying |= std::size_t{1}
                    << (std::lower_bound(vars.begin(), vars.end(), lit.variable) - vars.begin());
  auto f = DenseFunction::filled(std::move(vars), 1.0);
  f[falsifying] = 0.0;
  return f;
}

bool early_projection_check(const DenseFunction &f, const DenseFunction &g, int x) {
  if (!f.contains(x))
    throw std::invalid_argument("early projection requires x in vars(f)");
  if (g.contains(x))
    throw std::invalid_argument("early projection requires x not in vars(g)");
  return approx_equal(project(product(f, g), x), product(project(f, x), g));
}

bool approx_equal(const DenseFunction &f, const DenseFunction &g, double rel, double abs) {
  if (f.vars() != g.vars())
    return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!pjt::approx_equal(f[i], g[i], rel, abs))
      return false;
  return true;
}

} // namespace pjt

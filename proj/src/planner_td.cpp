#include "pjt/planner_td.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pjt/errors.hpp"
#include "pjt/pbf.hpp"
#include "pjt/tensor.hpp"

namespace pjt {

namespace {

class TdConverter {
public:
  TdConverter(const CnfFormula &formula, const TreeDecomposition &td, TdConversionTrace *trace)
      : formula_(formula), td_(td), trace_(trace), adjacency_(td.adjacency()),
        tree_(formula.var_count, formula.clause_count()),
        found_(static_cast<std::size_t>(formula.clause_count()) + 1, false),
        by_first_var_(static_cast<std::size_t>(formula.var_count) + 1) {
    vars_.emplace_back();
    for (const auto &c : formula.clauses) {
      vars_.push_back(clause_vars(c));
      if (vars_.back().empty())
        empty_clauses_.push_back(c.id);
      else
        by_first_var_[vars_.back().front()].push_back(c.id);
    }
  }

  ProjectJoinTree run() {
    int root_bag = 1;
    for (int b = 2; b <= td_.bag_count(); ++b)
      if (td_.bag(b).size() > td_.bag(root_bag).size())
        root_bag = b;
    auto top = process(root_bag, 0, {});
    for (int c = 1; c <= formula_.clause_count(); ++c)
      if (!found_[c])
        throw InvalidInput("clause " + std::to_string(c) + " fits in no bag");

    std::vector<bool> projected(static_cast<std::size_t>(formula_.var_count) + 1, false);
    for (const auto &node : tree_.nodes())
      for (int x : node.projected)
        projected[x] = true;
    std::vector<int> missing;
    for (int x = 1; x <= formula_.var_count; ++x)
      if (!projected[x])
        missing.push_back(x);

    if (top.empty() && missing.empty()) {
      // No clauses and no variables.
      tree_.add_internal({}, {});
      return std::move(tree_);
    }
    // Everything returned to the root has no unprojected variables, so a chain
    // projecting one leftover variable per node keeps each node at size 1.
    // Without clauses the chain starts from a childless node.
    if (top.size() != 1 || tree_.is_leaf(top.front()) || !missing.empty()) {
      std::size_t k = 0;
      auto first = missing.empty() ? std::vector<int>{} : std::vector<int>{missing[k++]};
      int id = tree_.add_internal(std::move(top), std::move(first));
      while (k < missing.size())
        id = tree_.add_internal({id}, {missing[k++]});
      top = {id};
    }
    tree_.set_root(top.front());
    return std::move(tree_);
  }

private:
  std::vector<int> process(int bag, int parent, const std::vector<int> &keep) {
    const auto &chi = td_.bag(bag);
    std::vector<int> children;
    if (first_call_) {
      first_call_ = false;
      for (int c : empty_clauses_)
        claim(c, children);
    }
    for (int x : chi)
      for (int c : by_first_var_[x])
        if (!found_[c] && std::includes(chi.begin(), chi.end(), vars_[c].begin(), vars_[c].end()))
          claim(c, children);
    for (int next : adjacency_[bag])
      if (next != parent)
        for (int id : process(next, bag, chi))
          children.push_back(id);

    std::vector<int> result;
    if (children.empty() || std::includes(keep.begin(), keep.end(), chi.begin(), chi.end())) {
      result = std::move(children);
    } else {
      std::vector<int> below;
      for (int id : children)
        below = var_union(below, vars_[id]);
      auto pi = var_difference(chi, keep);
      const int id = tree_.add_internal(std::move(children), pi);
      vars_.push_back(var_difference(below, pi));
      result = {id};
    }
    if (trace_) {
      ++trace_->process_calls;
      for (int id : result)
        if (!std::includes(keep.begin(), keep.end(), vars_[id].begin(), vars_[id].end()))
          trace_->bound_violations.push_back("bag " + std::to_string(bag) + " returned node " +
                                             std::to_string(id) + " with variables outside the bound");
    }
    return result;
  }

  void claim(int clause, std::vector<int> &children) {
    found_[clause] = true;
    children.push_back(clause); // leaf id == clause id
  }

  const CnfFormula &formula_;
  const TreeDecomposition &td_;
  TdConversionTrace *trace_;
  std::vector<std::vector<int>> adjacency_;
  ProjectJoinTree tree_;
  std::vector<bool> found_;
  std::vector<std::vector<int>> by_first_var_;
  std::vector<int> empty_clauses_;
  std::vector<std::vector<int>> vars_; // vars(n) by node id
  bool first_call_ = true;
};

} // namespace

ProjectJoinTree td_to_pjt(const CnfFormula &formula, const TreeDecomposition &td, TdConversionTrace *trace) {
  if (td.bags.empty())
    throw InvalidInput("tree decomposition has no bags");
  if (td.vertex_count > formula.var_count)
    throw InvalidInput("tree decomposition has more vertices than the formula has variables");
  const auto free = formula.free_vars();
  for (const auto &v : td_validate(td, gaifman_graph(formula))) {
    // Variables in no clause need not appear in any bag.
    if (v.kind == ViolationKind::VertexCoverage && std::binary_search(free.begin(), free.end(), v.subject))
      continue;
    throw InvalidInput("not a tree decomposition of the Gaifman graph: " + v.message);
  }
  return TdConverter(formula, td, trace).run();
}

std::string_view to_string(CostModel model) noexcept { return model == CostModel::Add ? "add" : "tensor"; }

std::optional<CostModel> parse_cost_model(std::string_view name) noexcept {
  if (name == "add")
    return CostModel::Add;
  if (name == "tensor")
    return CostModel::Tensor;
  return std::nullopt;
}

double estimate_cost(const ProjectJoinTree &tree, const CnfFormula &formula, CostModel model) {
  if (model == CostModel::Add)
    return std::ldexp(1.0, width(tree, formula));
  return static_cast<double>(estimate_flops(tree, formula));
}

StreamResult best_of_stream(const CnfFormula &formula, const TdDocumentSource &source,
                            const StreamOptions &options) {
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    if (options.elapsed)
      return options.elapsed();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::optional<StreamResult> best;
  int consumed = 0, rejected = 0;
  while (auto doc = source()) {
    ++consumed;
    try {
      auto td = parse_td(*doc);
      auto tree = td_to_pjt(formula, td);
      const double cost = estimate_cost(tree, formula, options.cost);
      if (!best || cost < best->cost)
        best = StreamResult{std::move(tree), std::move(td), cost, consumed, 0, 0};
    } catch (const ParseError &) {
      ++rejected;
      continue;
    } catch (const InvalidInput &) {
      ++rejected;
      continue;
    }
    if (elapsed() >= options.kappa * best->cost)
      break;
  }
  if (consumed == 0)
    throw InvalidInput("tree decomposition stream is empty");
  if (!best)
    throw InvalidInput("every tree decomposition in the stream was rejected");
  best->consumed = consumed;
  best->rejected = rejected;
  return std::move(*best);
}

} // namespace pjt

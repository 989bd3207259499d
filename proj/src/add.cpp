#include "pjt/add.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "pjt/errors.hpp"
#include "pjt/planner_htb.hpp"

namespace pjt {

std::vector<int> DiagramOrder::sequence() const {
  std::vector<int> seq(static_cast<std::size_t>(size()), 0);
  for (int x = 1; x <= size(); ++x)
    seq.at(static_cast<std::size_t>(level[x]) - 1) = x;
  return seq;
}

DiagramOrder DiagramOrder::from_sequence(std::span<const int> sequence) {
  const int n = static_cast<int>(sequence.size());
  DiagramOrder order;
  order.level.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < n; ++k) {
    const int x = sequence[k];
    if (x < 1 || x > n || order.level[x] != 0)
      throw std::invalid_argument("diagram order must be a permutation of 1.." + std::to_string(n));
    order.level[x] = k + 1;
  }
  return order;
}

DiagramOrder default_order(const CnfFormula &formula) {
  const auto rho = var_order(OrderHeuristic::Mcs, gaifman_graph(formula));
  return DiagramOrder::from_sequence(rho.sequence());
}

namespace {

std::atomic<std::uint32_t> next_manager_id{1};

std::uint64_t apply_key(std::uint64_t op, std::uint32_t f, std::uint32_t g) {
  return (op << 62) | (std::uint64_t{f} << 31) | g;
}

} // namespace

std::size_t AddManager::DecisionKeyHash::operator()(const DecisionKey &k) const noexcept {
  std::uint64_t h = static_cast<std::uint32_t>(k.var);
  h = h * 0x9E3779B97F4A7C15ULL ^ k.low;
  h = h * 0x9E3779B97F4A7C15ULL ^ k.high;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

AddManager::AddManager(DiagramOrder order) : order_(std::move(order)), id_(next_manager_id++) {}

void AddManager::check_owned(Add f) const {
  if (f.manager != id_ || f.node >= nodes_.size())
    throw InvalidInput("diagram belongs to a different manager (diagram order mismatch)");
}

int AddManager::level_of(std::uint32_t node) const {
  const int var = nodes_[node].var;
  return var == 0 ? INT_MAX : order_.level[var];
}

std::uint32_t AddManager::make_terminal(double value) {
  if (value == 0.0)
    value = 0.0;
  const auto bits = std::bit_cast<std::uint64_t>(value);
  if (auto it = terminals_.find(bits); it != terminals_.end())
    return it->second;
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({0, 0, 0, value});
  terminals_.emplace(bits, id);
  return id;
}

std::uint32_t AddManager::make_decision(int x, std::uint32_t low, std::uint32_t high) {
  if (low == high)
    return low;
  const DecisionKey key{x, low, high};
  if (auto it = decisions_.find(key); it != decisions_.end())
    return it->second;
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({x, low, high, 0.0});
  decisions_.emplace(key, id);
  return id;
}

Add AddManager::terminal(double value) { return handle(make_terminal(value)); }

Add AddManager::decision(int x, Add low, Add high) {
  check_owned(low);
  check_owned(high);
  if (x < 1 || x > order_.size())
    throw InvalidInput("variable " + std::to_string(x) + " is not in the diagram order");
  if (level_of(low.node) <= order_.level[x] || level_of(high.node) <= order_.level[x])
    throw std::invalid_argument("children of a decision on " + std::to_string(x) + " must test lower variables");
  return handle(make_decision(x, low.node, high.node));
}

Add AddManager::from_clause(const Clause &clause) {
  if (clause.tautological())
    return terminal(1.0);
  auto literals = clause.literals;
  for (const auto &lit : literals)
    if (lit.variable < 1 || lit.variable > order_.size())
      throw InvalidInput("variable " + std::to_string(lit.variable) + " is not in the diagram order");
  std::sort(literals.begin(), literals.end(), [&](const Literal &a, const Literal &b) {
    return order_.level[a.variable] > order_.level[b.variable];
  });
  const auto one = make_terminal(1.0);
  auto node = make_terminal(0.0);
  for (const auto &lit : literals)
    node = lit.positive ? make_decision(lit.variable, node, one) : make_decision(lit.variable, one, node);
  return handle(node);
}

std::uint32_t AddManager::apply(Op op, std::uint32_t f, std::uint32_t g) {
  if (g < f)
    std::swap(f, g);
  const Node &a = nodes_[f];
  const Node &b = nodes_[g];
  if (a.var == 0 && b.var == 0)
    return make_terminal(op == Op::Product ? a.value * b.value : a.value + b.value);
  const double identity = op == Op::Product ? 1.0 : 0.0;
  if (a.var == 0 && a.value == identity)
    return g;
  if (b.var == 0 && b.value == identity)
    return f;

  const auto key = apply_key(static_cast<std::uint64_t>(op), f, g);
  if (auto it = apply_cache_.find(key); it != apply_cache_.end())
    return it->second;

  const int lf = level_of(f);
  const int lg = level_of(g);
  const int var = lf <= lg ? nodes_[f].var : nodes_[g].var;
  const auto f_low = lf <= lg ? nodes_[f].low : f;
  const auto f_high = lf <= lg ? nodes_[f].high : f;
  const auto g_low = lg <= lf ? nodes_[g].low : g;
  const auto g_high = lg <= lf ? nodes_[g].high : g;
  const auto low = apply(op, f_low, g_low);
  const auto high = apply(op, f_high, g_high);
  const auto result = make_decision(var, low, high);
  apply_cache_.emplace(key, result);
  return result;
}

Add AddManager::product(Add f, Add g) {
  check_owned(f);
  check_owned(g);
  return handle(apply(Op::Product, f.node, g.node));
}

Add AddManager::sum(Add f, Add g) {
  check_owned(f);
  check_owned(g);
  return handle(apply(Op::Sum, f.node, g.node));
}

Add AddManager::scale(Add f, double factor) { return product(f, terminal(factor)); }

Add AddManager::project_weighted(Add f, int x, const LiteralWeight &w) {
  check_owned(f);
  if (x < 1 || x > order_.size())
    throw InvalidInput("variable " + std::to_string(x) + " is not in the diagram order");
  const int level = order_.level[x];
  const auto total = make_terminal(w.total());
  const auto neg = make_terminal(w.neg);
  const auto pos = make_terminal(w.pos);
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  const auto rec = [&](auto &self, std::uint32_t n) -> std::uint32_t {
    if (level_of(n) > level)
      return apply(Op::Product, n, total);
    if (auto it = memo.find(n); it != memo.end())
      return it->second;
    const Node node = nodes_[n];
    std::uint32_t result;
    if (node.var == x)
      result = apply(Op::Sum, apply(Op::Product, node.low, neg), apply(Op::Product, node.high, pos));
    else
      result = make_decision(node.var, self(self, node.low), self(self, node.high));
    memo.emplace(n, result);
    return result;
  };
  return handle(rec(rec, f.node));
}

bool AddManager::is_terminal(Add f) const {
  check_owned(f);
  return nodes_[f.node].var == 0;
}

double AddManager::value(Add f) const {
  if (!is_terminal(f))
    throw std::logic_error("value() on a decision node");
  return nodes_[f.node].value;
}

int AddManager::top_var(Add f) const {
  check_owned(f);
  return nodes_[f.node].var;
}

Add AddManager::low(Add f) const {
  check_owned(f);
  return handle(nodes_[f.node].var == 0 ? f.node : nodes_[f.node].low);
}

Add AddManager::high(Add f) const {
  check_owned(f);
  return handle(nodes_[f.node].var == 0 ? f.node : nodes_[f.node].high);
}

double AddManager::evaluate(Add f, std::span<const int> true_vars) const {
  check_owned(f);
  std::vector<int> sorted(true_vars.begin(), true_vars.end());
  std::sort(sorted.begin(), sorted.end());
  auto n = f.node;
  while (nodes_[n].var != 0)
    n = std::binary_search(sorted.begin(), sorted.end(), nodes_[n].var) ? nodes_[n].high : nodes_[n].low;
  return nodes_[n].value;
}

DenseFunction AddManager::to_dense(Add f, std::vector<int> vars) const {
  check_owned(f);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const auto needed = support(f);
  if (!std::includes(vars.begin(), vars.end(), needed.begin(), needed.end()))
    throw InvalidInput("domain does not cover the diagram's support");
  auto dense = DenseFunction::filled(vars, 0.0);
  for (std::uint64_t i = 0; i < dense.size(); ++i) {
    auto n = f.node;
    while (nodes_[n].var != 0) {
      const int k = dense.position(nodes_[n].var);
      n = (i >> k) & 1 ? nodes_[n].high : nodes_[n].low;
    }
    dense[i] = nodes_[n].value;
  }
  return dense;
}

std::size_t AddManager::node_count(Add f) const {
  check_owned(f);
  std::unordered_set<std::uint32_t> seen{f.node};
  std::vector<std::uint32_t> stack{f.node};
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (nodes_[n].var == 0)
      continue;
    for (auto c : {nodes_[n].low, nodes_[n].high})
      if (seen.insert(c).second)
        stack.push_back(c);
  }
  return seen.size();
}

std::vector<int> AddManager::support(Add f) const {
  check_owned(f);
  std::unordered_set<std::uint32_t> seen{f.node};
  std::vector<std::uint32_t> stack{f.node};
  std::vector<int> vars;
  while (!stack.empty()) {
    const auto n = stack.back();
    stack.pop_back();
    if (nodes_[n].var == 0)
      continue;
    vars.push_back(nodes_[n].var);
    for (auto c : {nodes_[n].low, nodes_[n].high})
      if (seen.insert(c).second)
        stack.push_back(c);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

AddExecutor::AddExecutor(const CnfFormula &formula, DiagramOrder order)
    : formula_(formula), manager_(std::move(order)) {
  const auto &level = manager_.order().level;
  if (manager_.order().size() != formula.var_count)
    throw InvalidInput("diagram order ranks " + std::to_string(manager_.order().size()) +
                       " variables but the formula has " + std::to_string(formula.var_count));
  std::vector<bool> used(level.size(), false);
  for (int x = 1; x <= formula.var_count; ++x) {
    if (level[x] < 1 || level[x] > formula.var_count || used[level[x]])
      throw InvalidInput("diagram order is not a bijection onto levels 1.." + std::to_string(formula.var_count));
    used[level[x]] = true;
  }
}

std::vector<Add> AddExecutor::valuate_all(const ProjectJoinTree &tree, const WeightFunction &weights) {
  if (const auto problems = validate(tree, formula_); !problems.empty())
    throw InvalidInput("invalid project-join tree: " + problems.front().message);
  if (weights.var_count() < formula_.var_count)
    throw InvalidInput("weight function covers fewer variables than the formula");
  const auto &level = manager_.order().level;
  std::vector<Add> result(static_cast<std::size_t>(tree.node_count()) + 1);
  for (const auto &node : tree.nodes()) {
    if (node.leaf) {
      result[node.id] = manager_.from_clause(formula_.clause(node.clause_id));
      continue;
    }
    auto acc = manager_.terminal(1.0);
    for (int c : node.children)
      acc = manager_.product(acc, result[c]);
    auto pi = node.projected;
    std::sort(pi.begin(), pi.end(), [&](int a, int b) { return level[a] < level[b]; });
    for (int x : pi)
      acc = manager_.project_weighted(acc, x, weights[x]);
    result[node.id] = acc;
  }
  return result;
}

double AddExecutor::valuate(const ProjectJoinTree &tree, const WeightFunction &weights) {
  const auto all = valuate_all(tree, weights);
  const Add root = all[tree.root()];
  if (!manager_.is_terminal(root))
    throw std::logic_error("root diagram is not a constant");
  return manager_.value(root);
}

double valuate_add(const ProjectJoinTree &tree, const CnfFormula &formula) {
  AddExecutor executor(formula, default_order(formula));
  return executor.valuate(tree, formula.weights);
}

} // namespace pjt

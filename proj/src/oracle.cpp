#include "pjt/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "pjt/errors.hpp"
#include "pjt/graph.hpp"
#include "pjt/pbf.hpp"

namespace pjt {

double brute_force_wmc(const CnfFormula &formula, const WeightFunction &weights) {
  const int m = formula.var_count;
  if (m > kMaxBruteForceVars)
    throw ResourceError("brute force supports at most " + std::to_string(kMaxBruteForceVars) +
                        " variables, got " + std::to_string(m));
  if (weights.var_count() < m)
    throw InvalidInput("weight function covers fewer variables than the formula");

  // Bit v-1 of an assignment is variable v.
  std::vector<std::uint32_t> pos(formula.clauses.size(), 0), neg(formula.clauses.size(), 0);
  for (std::size_t k = 0; k < formula.clauses.size(); ++k)
    for (const auto &lit : formula.clauses[k].literals)
      (lit.positive ? pos[k] : neg[k]) |= std::uint32_t{1} << (lit.variable - 1);

  double total = 0;
  const std::uint32_t count = std::uint32_t{1} << m;
  for (std::uint32_t a = 0; a < count; ++a) {
    bool sat = true;
    for (std::size_t k = 0; k < pos.size() && sat; ++k)
      sat = (a & pos[k]) != 0 || (~a & neg[k]) != 0;
    if (!sat)
      continue;
    double w = 1;
    for (int v = 1; v <= m; ++v)
      w *= (a >> (v - 1)) & 1 ? weights[v].pos : weights[v].neg;
    total += w;
  }
  return total;
}

double brute_force_wmc(const CnfFormula &formula) { return brute_force_wmc(formula, formula.weights); }

int NiceTd::width() const {
  std::size_t largest = 0;
  for (const auto &n : nodes)
    largest = std::max(largest, n.bag.size());
  return static_cast<int>(largest) - 1;
}

namespace {

class NiceBuilder {
public:
  NiceBuilder(const TreeDecomposition &td) : td_(td), adjacency_(td.adjacency()) {}

  NiceTd run(int root_bag) {
    int top = build(root_bag, 0);
    auto bag = nice_.nodes[top].bag;
    for (auto it = bag.rbegin(); it != bag.rend(); ++it)
      top = remove(top, *it);
    return std::move(nice_);
  }

private:
  int build(int b, int parent) {
    const auto &chi = td_.bag(b);
    int acc = -1;
    for (int c : adjacency_[b]) {
      if (c == parent)
        continue;
      int top = build(c, b);
      const auto extra = var_difference(nice_.nodes[top].bag, chi);
      for (auto it = extra.rbegin(); it != extra.rend(); ++it)
        top = remove(top, *it);
      for (int x : var_difference(chi, nice_.nodes[top].bag))
        top = intro(top, x);
      acc = acc < 0 ? top : add({NiceKind::Join, chi, 0, {acc, top}});
    }
    if (acc < 0) {
      acc = add({NiceKind::Leaf, {}, 0, {}});
      for (int x : chi)
        acc = intro(acc, x);
    }
    return acc;
  }

  int intro(int child, int x) {
    auto bag = var_union(nice_.nodes[child].bag, std::vector<int>{x});
    return add({NiceKind::Intro, std::move(bag), x, {child}});
  }

  int remove(int child, int x) {
    auto bag = var_difference(nice_.nodes[child].bag, std::vector<int>{x});
    return add({NiceKind::Removal, std::move(bag), x, {child}});
  }

  int add(NiceNode node) {
    nice_.nodes.push_back(std::move(node));
    return static_cast<int>(nice_.nodes.size()) - 1;
  }

  const TreeDecomposition &td_;
  std::vector<std::vector<int>> adjacency_;
  NiceTd nice_;
};

void check_nice(const NiceTd &nice) {
  if (nice.nodes.empty() || !nice.nodes.back().bag.empty())
    throw InvalidInput("nice decomposition needs a root with an empty bag");
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto &n = nice.nodes[i];
    for (int c : n.children)
      if (c < 0 || static_cast<std::size_t>(c) >= i)
        throw InvalidInput("nice node " + std::to_string(i) + " has a child that is not stored before it");
    const auto child_bag = [&](std::size_t k) -> const std::vector<int> & { return nice.nodes[n.children[k]].bag; };
    bool ok = false;
    switch (n.kind) {
    case NiceKind::Leaf:
      ok = n.children.empty() && n.bag.empty();
      break;
    case NiceKind::Intro:
      ok = n.children.size() == 1 && !std::binary_search(child_bag(0).begin(), child_bag(0).end(), n.var) &&
           n.bag == var_union(child_bag(0), std::vector<int>{n.var});
      break;
    case NiceKind::Removal:
      ok = n.children.size() == 1 && std::binary_search(child_bag(0).begin(), child_bag(0).end(), n.var) &&
           n.bag == var_difference(child_bag(0), std::vector<int>{n.var});
      break;
    case NiceKind::Join:
      ok = n.children.size() == 2 && child_bag(0) == n.bag && child_bag(1) == n.bag;
      break;
    }
    if (!ok)
      throw InvalidInput("nice node " + std::to_string(i) + " breaks its node-type rule");
  }
}

} // namespace

NiceTd make_nice(const TreeDecomposition &td, int root_bag) {
  if (root_bag < 1 || root_bag > td.bag_count())
    throw InvalidInput("root bag " + std::to_string(root_bag) + " does not exist");
  int vertices = td.vertex_count;
  for (const auto &bag : td.bags)
    if (!bag.empty())
      vertices = std::max(vertices, bag.back());
  for (const auto &v : td_validate(td, Graph(vertices)))
    if (v.kind != ViolationKind::VertexCoverage)
      throw InvalidInput("not a tree decomposition: " + v.message);
  return NiceBuilder(td).run(root_bag);
}

TreeDecomposition nice_to_td(const NiceTd &nice, int vertex_count) {
  TreeDecomposition td;
  td.vertex_count = vertex_count;
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    td.bags.push_back(nice.nodes[i].bag);
    for (int c : nice.nodes[i].children)
      td.edges.emplace_back(c + 1, static_cast<int>(i) + 1);
  }
  return td;
}

double nice_td_wmc(const CnfFormula &formula, const WeightFunction &weights, const NiceTd &nice) {
  check_nice(nice);
  if (weights.var_count() < formula.var_count)
    throw InvalidInput("weight function covers fewer variables than the formula");
  for (const auto &n : nice.nodes)
    for (int x : n.bag)
      if (x < 1 || x > formula.var_count)
        throw InvalidInput("nice bag holds variable " + std::to_string(x) + " outside the formula");

  std::vector<std::vector<int>> clauses_of(static_cast<std::size_t>(formula.var_count) + 1);
  std::vector<std::vector<int>> vars(formula.clauses.size());
  std::vector<bool> enforced(formula.clauses.size(), false);
  bool has_empty_clause = false;
  for (std::size_t k = 0; k < formula.clauses.size(); ++k) {
    vars[k] = clause_vars(formula.clauses[k]);
    has_empty_clause = has_empty_clause || vars[k].empty();
    enforced[k] = vars[k].empty();
    for (int x : vars[k])
      clauses_of[x].push_back(static_cast<int>(k));
  }

  // Table of node i: entry j is the sum over the subtree's removed variables
  // for the bag assignment whose bit k sets bag[k].
  std::vector<std::vector<double>> tables(nice.nodes.size());
  std::vector<bool> in_bag(static_cast<std::size_t>(formula.var_count) + 1, false);
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto &n = nice.nodes[i];
    for (int x : n.bag)
      in_bag[x] = true;
    const std::size_t size = std::size_t{1} << n.bag.size();
    std::vector<double> table(size);
    switch (n.kind) {
    case NiceKind::Leaf:
      table[0] = 1.0;
      break;
    case NiceKind::Intro: {
      const auto &child = nice.nodes[n.children[0]];
      const auto masks = embed_masks(child.bag, n.bag);
      for (std::uint64_t j = 0; j < size; ++j)
        table[j] = tables[n.children[0]][restrict_index(j, masks)];
      break;
    }
    case NiceKind::Removal: {
      const auto &child = nice.nodes[n.children[0]];
      auto child_table = tables[n.children[0]];
      const auto bit_of = [&](int x) {
        return std::uint64_t{1} << (std::lower_bound(child.bag.begin(), child.bag.end(), x) - child.bag.begin());
      };
      for (int k : clauses_of[n.var]) {
        if (!std::includes(child.bag.begin(), child.bag.end(), vars[k].begin(), vars[k].end()))
          continue;
        enforced[k] = true;
        std::uint64_t pos = 0, neg = 0;
        for (const auto &lit : formula.clauses[k].literals)
          (lit.positive ? pos : neg) |= bit_of(lit.variable);
        for (std::uint64_t j = 0; j < child_table.size(); ++j)
          if ((j & pos) == 0 && (~j & neg) == 0)
            child_table[j] = 0.0;
      }
      const auto masks = embed_masks(n.bag, child.bag);
      const std::uint64_t bit = bit_of(n.var);
      const auto &w = weights[n.var];
      for (std::uint64_t j = 0; j < size; ++j) {
        std::uint64_t zero = 0;
        for (std::size_t k = 0; k < masks.size(); ++k)
          if (j & (std::uint64_t{1} << k))
            zero |= masks[k];
        table[j] = child_table[zero] * w.neg + child_table[zero | bit] * w.pos;
      }
      break;
    }
    case NiceKind::Join: {
      const auto &a = tables[n.children[0]];
      const auto &b = tables[n.children[1]];
      for (std::uint64_t j = 0; j < size; ++j)
        table[j] = a[j] * b[j];
      break;
    }
    }
    for (int c : n.children)
      std::vector<double>().swap(tables[c]);
    tables[i] = std::move(table);
  }

  for (std::size_t k = 0; k < formula.clauses.size(); ++k)
    if (!enforced[k])
      throw InvalidInput("clause " + std::to_string(k + 1) + " lies in no bag");
  double result = tables[nice.root()][0];
  for (int x = 1; x <= formula.var_count; ++x)
    if (!in_bag[x])
      result *= weights[x].total();
  return has_empty_clause ? 0.0 : result;
}

double nice_td_wmc(const CnfFormula &formula) {
  const auto td = build_td_minfill(gaifman_graph(formula));
  return nice_td_wmc(formula, formula.weights, make_nice(td));
}

} // namespace pjt

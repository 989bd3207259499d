#include "pjt/jointree.hpp"

#include <algorithm>
#include <optional>

#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"
#include "pjt/pbf.hpp"
#include "text_util.hpp"

namespace pjt {

ProjectJoinTree::ProjectJoinTree(int var_count, int clause_count)
    : var_count_(var_count), clause_count_(clause_count) {
  nodes_.reserve(static_cast<std::size_t>(clause_count) * 2 + 1);
  for (int i = 1; i <= clause_count; ++i)
    nodes_.push_back(PjNode{i, true, i, {}, {}});
}

ProjectJoinTree::ProjectJoinTree(int var_count, int clause_count, std::vector<PjNode> nodes, int root)
    : var_count_(var_count), clause_count_(clause_count), nodes_(std::move(nodes)), root_(root) {}

int ProjectJoinTree::add_internal(std::vector<int> children, std::vector<int> projected) {
  std::sort(children.begin(), children.end());
  std::sort(projected.begin(), projected.end());
  const int id = node_count() + 1;
  nodes_.push_back(PjNode{id, false, 0, std::move(children), std::move(projected)});
  root_ = id;
  return id;
}

namespace {

std::string node_name(int id) { return "node " + std::to_string(id); }

} // namespace

Violations validate(const ProjectJoinTree &tree, const CnfFormula &formula) {
  Violations out;
  const auto report = [&](ViolationKind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };
  const int n = tree.node_count();
  const int m = formula.var_count;
  const int l = formula.clause_count();

  if (tree.var_count() != m)
    report(ViolationKind::Structure, "tree declares " + std::to_string(tree.var_count()) +
                                         " variables but the formula has " + std::to_string(m));
  if (tree.clause_count() != l)
    report(ViolationKind::Structure, "tree declares " + std::to_string(tree.clause_count()) +
                                         " clauses but the formula has " + std::to_string(l));
  if (n == 0) {
    report(ViolationKind::Structure, "tree has no nodes");
    return out;
  }
  bool shape_ok = true;
  const auto structure = [&](std::string msg) {
    shape_ok = false;
    report(ViolationKind::Structure, std::move(msg));
  };
  const int root = tree.root();
  if (root < 1 || root > n)
    structure("root " + std::to_string(root) + " is not a node");

  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> parent_count(static_cast<std::size_t>(n) + 1, 0);
  for (int id = 1; id <= n; ++id) {
    const auto &node = tree.node(id);
    if (node.id != id)
      structure("node at position " + std::to_string(id) + " carries id " + std::to_string(node.id));
    if (node.leaf) {
      if (!node.children.empty() || !node.projected.empty())
        structure(node_name(id) + " is a leaf but has children or projected variables");
      continue;
    }
    // Without clauses no node can have a leaf below it.
    if (node.children.empty() && l != 0)
      structure(node_name(id) + " is internal but has no children");
    for (int c : node.children) {
      if (c < 1 || c > n) {
        structure(node_name(id) + " has nonexistent child " + std::to_string(c));
      } else if (c >= id) {
        structure(node_name(id) + " has child " + std::to_string(c) + " with a larger id");
      } else {
        ++parent_count[c];
        parent[c] = id;
      }
    }
  }
  for (int id = 1; id <= n; ++id) {
    if (id == root) {
      if (parent_count[id] != 0)
        structure("root " + node_name(id) + " has a parent");
    } else if (parent_count[id] != 1) {
      structure(node_name(id) + " has " + std::to_string(parent_count[id]) + " parents");
    }
  }

  // γ: leaves <-> clauses.
  std::vector<int> leaf_of_clause(static_cast<std::size_t>(l) + 1, 0);
  std::vector<int> leaf_count(static_cast<std::size_t>(l) + 1, 0);
  for (const auto &node : tree.nodes()) {
    if (!node.leaf)
      continue;
    if (node.clause_id < 1 || node.clause_id > l) {
      report(ViolationKind::LeafMapping,
             node_name(node.id) + " maps to nonexistent clause " + std::to_string(node.clause_id));
      continue;
    }
    ++leaf_count[node.clause_id];
    leaf_of_clause[node.clause_id] = node.id;
  }
  for (int c = 1; c <= l; ++c)
    if (leaf_count[c] != 1)
      report(ViolationKind::LeafMapping,
             "clause " + std::to_string(c) + " has " + std::to_string(leaf_count[c]) + " leaves");

  // Property 1: π labels partition X.
  std::vector<int> projected_count(static_cast<std::size_t>(m) + 1, 0);
  for (const auto &node : tree.nodes()) {
    if (node.leaf)
      continue;
    for (int x : node.projected) {
      if (x < 1 || x > m)
        report(ViolationKind::Partition,
               node_name(node.id) + " projects nonexistent variable " + std::to_string(x));
      else
        ++projected_count[x];
    }
  }
  for (int x = 1; x <= m; ++x)
    if (projected_count[x] != 1)
      report(ViolationKind::Partition, "variable " + std::to_string(x) + " is projected at " +
                                           std::to_string(projected_count[x]) + " nodes");

  // Property 2: clauses mentioning a projected variable lie below the projecting node.
  if (!shape_ok)
    return out;
  std::vector<std::vector<int>> occurrences(static_cast<std::size_t>(m) + 1);
  for (const auto &c : formula.clauses)
    for (int x : clause_vars(c))
      occurrences[x].push_back(c.id);
  for (const auto &node : tree.nodes()) {
    if (node.leaf)
      continue;
    for (int x : node.projected) {
      if (x < 1 || x > m)
        continue;
      for (int c : occurrences[x]) {
        int at = leaf_of_clause[c];
        if (at == 0)
          continue;
        while (at != 0 && at < node.id)
          at = parent[at];
        if (at != node.id)
          report(ViolationKind::Descendant, "leaf of clause " + std::to_string(c) + " mentions variable " +
                                                std::to_string(x) + " but is not below " +
                                                node_name(node.id));
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> all_node_vars(const ProjectJoinTree &tree, const CnfFormula &formula) {
  std::vector<std::vector<int>> vars(static_cast<std::size_t>(tree.node_count()) + 1);
  for (const auto &node : tree.nodes()) {
    if (node.leaf) {
      vars[node.id] = clause_vars(formula.clause(node.clause_id));
      continue;
    }
    std::vector<int> acc;
    for (int c : node.children) {
      if (c >= node.id)
        throw InvalidInput("node_vars requires children with smaller ids");
      acc = var_union(acc, vars[c]);
    }
    vars[node.id] = var_difference(acc, node.projected);
  }
  return vars;
}

std::vector<int> node_vars(const ProjectJoinTree &tree, const CnfFormula &formula, int node) {
  if (node < 1 || node > tree.node_count())
    throw std::out_of_range("unknown node " + std::to_string(node));
  return all_node_vars(tree, formula)[node];
}

std::vector<int> node_sizes(const ProjectJoinTree &tree, const CnfFormula &formula) {
  const auto vars = all_node_vars(tree, formula);
  std::vector<int> sizes(vars.size(), 0);
  for (const auto &node : tree.nodes())
    sizes[node.id] = node.leaf ? static_cast<int>(vars[node.id].size())
                               : static_cast<int>(var_union(vars[node.id], node.projected).size());
  return sizes;
}

int width(const ProjectJoinTree &tree, const CnfFormula &formula) {
  const auto sizes = node_sizes(tree, formula);
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

namespace {

template <class Visit> void for_each_below(const ProjectJoinTree &tree, int node, Visit visit) {
  if (node < 1 || node > tree.node_count())
    throw std::out_of_range("unknown node " + std::to_string(node));
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const auto &n = tree.node(id);
    visit(n);
    for (int c : n.children)
      if (c >= 1 && c < id)
        stack.push_back(c);
  }
}

} // namespace

std::vector<int> subtree_clauses(const ProjectJoinTree &tree, int node) {
  std::vector<int> out;
  for_each_below(tree, node, [&](const PjNode &n) {
    if (n.leaf)
      out.push_back(n.clause_id);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> subtree_projected(const ProjectJoinTree &tree, int node) {
  std::vector<int> out;
  for_each_below(tree, node, [&](const PjNode &n) { out.insert(out.end(), n.projected.begin(), n.projected.end()); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

int jt_int(std::string_view word, int line) {
  const auto value = parse_integer(word);
  if (!value || *value < 0 || *value > 2'000'000'000)
    throw ParseError(line, "malformed number '" + std::string(word) + "'");
  return static_cast<int>(*value);
}

} // namespace

ProjectJoinTree read_jt(std::string_view text) {
  std::optional<int> problem_line;
  int m = 0, l = 0, n = 0;
  std::vector<PjNode> nodes;
  std::vector<bool> defined;

  for (const auto &[number, line] : detail::split_lines(text)) {
    const auto words = detail::split_words(line);
    if (words.empty() || words.front().front() == 'c')
      continue;
    if (words.front() == "p") {
      if (problem_line)
        throw ParseError(number, "duplicate problem line");
      if (words.size() != 5 || words[1] != "jt")
        throw ParseError(number, "problem line must be `p jt <vars> <clauses> <nodes>`");
      m = jt_int(words[2], number);
      l = jt_int(words[3], number);
      n = jt_int(words[4], number);
      if (n <= l)
        throw ParseError(number, "node count must exceed clause count");
      problem_line = number;
      for (int i = 1; i <= l; ++i)
        nodes.push_back(PjNode{i, true, i, {}, {}});
      for (int i = l + 1; i <= n; ++i)
        nodes.push_back(PjNode{i, false, 0, {}, {}});
      defined.assign(static_cast<std::size_t>(n) + 1, false);
      continue;
    }
    if (!problem_line)
      throw ParseError(number, "branch line before problem line");
    const int h = jt_int(words.front(), number);
    if (h <= l || h > n)
      throw ParseError(number, "branch node id " + std::to_string(h) + " outside " + std::to_string(l + 1) +
                                   ".." + std::to_string(n));
    if (defined[h])
      throw ParseError(number, "duplicate definition of node " + std::to_string(h));
    defined[h] = true;
    auto &node = nodes[h - 1];
    bool after_separator = false;
    for (std::size_t k = 1; k < words.size(); ++k) {
      if (words[k] == "e") {
        if (after_separator)
          throw ParseError(number, "repeated 'e' separator");
        after_separator = true;
        continue;
      }
      const int value = jt_int(words[k], number);
      if (after_separator) {
        if (value < 1 || value > m)
          throw ParseError(number, "projected variable " + std::to_string(value) + " outside 1.." +
                                       std::to_string(m));
        node.projected.push_back(value);
      } else {
        if (value < 1 || value >= h)
          throw ParseError(number, "child " + std::to_string(value) + " of node " + std::to_string(h) +
                                       " must be in 1.." + std::to_string(h - 1));
        node.children.push_back(value);
      }
    }
    if (!after_separator)
      throw ParseError(number, "branch line lacks the 'e' separator");
    std::sort(node.children.begin(), node.children.end());
    std::sort(node.projected.begin(), node.projected.end());
    node.projected.erase(std::unique(node.projected.begin(), node.projected.end()), node.projected.end());
  }
  if (!problem_line)
    throw ParseError(0, "missing problem line");
  for (int h = l + 1; h <= n; ++h)
    if (!defined[h])
      throw ParseError(*problem_line, "branch node " + std::to_string(h) + " is never defined");
  return ProjectJoinTree(m, l, std::move(nodes), n);
}

std::string write_jt(const ProjectJoinTree &tree) {
  if (tree.root() != tree.node_count())
    throw InvalidInput("JT output requires the root to be the last node");
  std::string out = "p jt " + std::to_string(tree.var_count()) + " " + std::to_string(tree.clause_count()) +
                    " " + std::to_string(tree.node_count()) + "\n";
  for (const auto &node : tree.nodes()) {
    if (node.leaf) {
      if (node.id > tree.clause_count() || node.clause_id != node.id)
        throw InvalidInput("JT output requires leaves 1..l mapped to clauses 1..l");
      continue;
    }
    out += std::to_string(node.id);
    for (int c : node.children)
      out += " " + std::to_string(c);
    out += " e";
    for (int x : node.projected)
      out += " " + std::to_string(x);
    out += "\n";
  }
  return out;
}

TreeDecomposition tree_to_td(const ProjectJoinTree &tree, const CnfFormula &formula) {
  if (const auto violations = validate(tree, formula); !violations.empty())
    throw InvalidInput("tree_to_td on an invalid tree: " + violations.front().message);
  const auto vars = all_node_vars(tree, formula);
  TreeDecomposition td;
  td.vertex_count = formula.var_count;
  for (const auto &node : tree.nodes()) {
    td.bags.push_back(node.leaf ? vars[node.id] : var_union(vars[node.id], node.projected));
    for (int c : node.children)
      td.edges.emplace_back(c, node.id);
  }
  return td;
}

} // namespace pjt

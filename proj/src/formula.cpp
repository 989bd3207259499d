#include "pjt/formula.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"
#include "text_util.hpp"

namespace pjt {

bool Clause::tautological() const {
  for (std::size_t i = 0; i < literals.size(); ++i)
    for (std::size_t j = i + 1; j < literals.size(); ++j)
      if (literals[i].variable == literals[j].variable && literals[i].positive != literals[j].positive)
        return true;
  return false;
}

bool Clause::satisfied_by(const std::vector<bool> &assignment) const {
  return std::any_of(literals.begin(), literals.end(), [&](const Literal &lit) {
    return assignment.at(lit.variable) == lit.positive;
  });
}

std::vector<int> CnfFormula::used_vars() const {
  std::vector<bool> seen(static_cast<std::size_t>(var_count) + 1, false);
  for (const auto &c : clauses)
    for (const auto &lit : c.literals)
      seen[lit.variable] = true;
  std::vector<int> result;
  for (int x = 1; x <= var_count; ++x)
    if (seen[x])
      result.push_back(x);
  return result;
}

std::vector<int> CnfFormula::free_vars() const {
  const auto used = used_vars();
  std::vector<int> result;
  for (int x = 1; x <= var_count; ++x)
    if (!std::binary_search(used.begin(), used.end(), x))
      result.push_back(x);
  return result;
}

namespace {

void apply_weight_line(const std::vector<std::string_view> &words, int line, int var_count,
                       WeightFunction &weights) {
  if (words.size() < 3 || words.size() > 4)
    throw ParseError(line, "weight line must be `w <literal> <weight> [0]`");
  const auto lit = parse_integer(words[1]);
  if (!lit || *lit == 0)
    throw ParseError(line, "malformed weight literal '" + std::string(words[1]) + "'");
  if (std::llabs(*lit) > var_count)
    throw ParseError(line, "weight literal " + std::to_string(*lit) + " exceeds variable count " +
                               std::to_string(var_count));
  const auto value = parse_double(words[2]);
  if (!value)
    throw ParseError(line, "non-numeric weight '" + std::string(words[2]) + "'");
  if (words.size() == 4 && words[3] != "0")
    throw ParseError(line, "weight line must end with 0 or nothing");
  auto &w = weights[static_cast<int>(std::llabs(*lit))];
  (*lit > 0 ? w.pos : w.neg) = *value;
}

bool is_comment(std::string_view line) { return !line.empty() && line.front() == 'c'; }

} // namespace

CnfFormula parse_cnf(std::string_view text) {
  CnfFormula formula;
  std::optional<int> problem_line;
  long long declared_clauses = 0;
  std::vector<Literal> pending;
  int pending_line = 0;

  for (const auto &[number, line] : detail::split_lines(text)) {
    const auto words = detail::split_words(line);
    if (words.empty() || is_comment(words.front()))
      continue;
    if (words.front() == "p") {
      if (problem_line)
        throw ParseError(number, "duplicate problem line (first on line " +
                                     std::to_string(*problem_line) + ")");
      if (words.size() != 4 || words[1] != "cnf")
        throw ParseError(number, "problem line must be `p cnf <vars> <clauses>`");
      const auto m = parse_integer(words[2]);
      const auto l = parse_integer(words[3]);
      if (!m || !l || *m < 0 || *l < 0 || *m > 1'000'000'000)
        throw ParseError(number, "malformed counts on problem line");
      problem_line = number;
      formula.var_count = static_cast<int>(*m);
      formula.weights = WeightFunction(formula.var_count);
      declared_clauses = *l;
      continue;
    }
    if (!problem_line)
      throw ParseError(number, "content before problem line");
    if (words.front() == "w") {
      apply_weight_line(words, number, formula.var_count, formula.weights);
      continue;
    }
    for (auto word : words) {
      const auto lit = parse_integer(word);
      if (!lit)
        throw ParseError(number, "malformed token '" + std::string(word) + "'");
      if (*lit == 0) {
        Clause clause;
        clause.id = formula.clause_count() + 1;
        for (const auto &l : pending)
          if (std::find(clause.literals.begin(), clause.literals.end(), l) == clause.literals.end())
            clause.literals.push_back(l);
        formula.clauses.push_back(std::move(clause));
        pending.clear();
        continue;
      }
      if (std::llabs(*lit) > formula.var_count)
        throw ParseError(number, "literal " + std::to_string(*lit) + " exceeds variable count " +
                                     std::to_string(formula.var_count));
      pending.push_back({static_cast<int>(std::llabs(*lit)), *lit > 0});
      pending_line = number;
    }
  }

  if (!problem_line)
    throw ParseError(0, "missing problem line");
  if (!pending.empty())
    throw ParseError(pending_line, "clause not terminated by 0");
  if (formula.clause_count() != declared_clauses)
    throw ParseError(*problem_line, "problem line declares " + std::to_string(declared_clauses) +
                                        " clauses but " + std::to_string(formula.clause_count()) +
                                        " were given");
  return formula;
}

WeightFunction parse_weights(std::string_view text, int var_count) {
  WeightFunction weights(var_count);
  for (const auto &[number, line] : detail::split_lines(text)) {
    const auto words = detail::split_words(line);
    if (!words.empty() && words.front() == "w")
      apply_weight_line(words, number, var_count, weights);
  }
  return weights;
}

std::string write_cnf(const CnfFormula &formula) {
  std::string out = "p cnf " + std::to_string(formula.var_count) + " " +
                    std::to_string(formula.clause_count()) + "\n";
  for (int x = 1; x <= formula.var_count; ++x) {
    if (formula.weights.is_default(x))
      continue;
    out += "w " + std::to_string(x) + " " + format_double(formula.weights[x].pos) + " 0\n";
    out += "w -" + std::to_string(x) + " " + format_double(formula.weights[x].neg) + " 0\n";
  }
  for (const auto &c : formula.clauses) {
    for (const auto &lit : c.literals)
      out += std::to_string(lit.dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

std::vector<int> clause_vars(const Clause &clause) {
  std::vector<int> vars;
  vars.reserve(clause.literals.size());
  for (const auto &lit : clause.literals)
    vars.push_back(lit.variable);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Graph gaifman_graph(const CnfFormula &formula) {
  Graph g(formula.var_count);
  for (const auto &c : formula.clauses) {
    const auto vars = clause_vars(c);
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j)
        g.add_edge(vars[i], vars[j]);
  }
  return g;
}

} // namespace pjt

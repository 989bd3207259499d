#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pjt/graph.hpp"

namespace pjt {

struct Literal {
  int variable = 0; // 1-based
  bool positive = true;

  /// DIMACS encoding: +v or -v.
  [[nodiscard]] int dimacs() const noexcept { return positive ? variable : -variable; }
  friend bool operator==(const Literal &, const Literal &) = default;
};

struct Clause {
  std::vector<Literal> literals; // file order, duplicates removed
  int id = 0;                    // 1-based position in the formula

  /// True iff some variable occurs with both polarities.
  [[nodiscard]] bool tautological() const;
  /// True iff the assignment (bit v set = variable v true) satisfies the clause.
  [[nodiscard]] bool satisfied_by(const std::vector<bool> &assignment) const;
  friend bool operator==(const Clause &, const Clause &) = default;
};

/// Literal weights of one variable: W_x({x}) and W_x(∅).
struct LiteralWeight {
  double neg = 1.0;
  double pos = 1.0;

  [[nodiscard]] double total() const noexcept { return neg + pos; }
  friend bool operator==(const LiteralWeight &, const LiteralWeight &) = default;
};

/// Per-variable literal weights for variables 1..m, default 1/1.
class WeightFunction {
public:
  WeightFunction() = default;
  explicit WeightFunction(int var_count)
      : weights_(static_cast<std::size_t>(var_count) + 1) {}

  [[nodiscard]] int var_count() const noexcept { return static_cast<int>(weights_.size()) - 1; }
  [[nodiscard]] const LiteralWeight &operator[](int x) const { return weights_.at(x); }
  [[nodiscard]] LiteralWeight &operator[](int x) { return weights_.at(x); }
  [[nodiscard]] bool is_default(int x) const { return weights_.at(x) == LiteralWeight{}; }

  friend bool operator==(const WeightFunction &, const WeightFunction &) = default;

private:
  std::vector<LiteralWeight> weights_; // index 0 unused
};

struct CnfFormula {
  int var_count = 0;
  std::vector<Clause> clauses;
  WeightFunction weights;

  [[nodiscard]] int clause_count() const noexcept { return static_cast<int>(clauses.size()); }
  [[nodiscard]] const Clause &clause(int id) const { return clauses.at(static_cast<std::size_t>(id) - 1); }
  /// Variables that occur in at least one clause, ascending.
  [[nodiscard]] std::vector<int> used_vars() const;
  /// Variables of X that occur in no clause, ascending.
  [[nodiscard]] std::vector<int> free_vars() const;

  friend bool operator==(const CnfFormula &, const CnfFormula &) = default;
};

/// Parses a DIMACS CNF document, including `w <lit> <weight> [0]` lines.
/// Throws ParseError naming the offending line.
[[nodiscard]] CnfFormula parse_cnf(std::string_view text);

/// Collects only the `w` lines of a document; every other line is ignored.
[[nodiscard]] WeightFunction parse_weights(std::string_view text, int var_count);

/// Canonical serialization: problem line, non-default weights, one clause per line.
[[nodiscard]] std::string write_cnf(const CnfFormula &formula);

/// Variables of a clause, ascending and distinct.
[[nodiscard]] std::vector<int> clause_vars(const Clause &clause);

/// Primal graph over 1..m; each clause contributes a clique.
[[nodiscard]] Graph gaifman_graph(const CnfFormula &formula);

} // namespace pjt

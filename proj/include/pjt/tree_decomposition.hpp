#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pjt/graph.hpp"
#include "pjt/violation.hpp"

namespace pjt {

/// Tree decomposition (S, χ) with bags numbered 1..B as in the PACE format.
struct TreeDecomposition {
  int vertex_count = 0;
  std::vector<std::vector<int>> bags;     // bag i at index i-1, ascending vertices
  std::vector<std::pair<int, int>> edges; // bag ids

  [[nodiscard]] int bag_count() const noexcept { return static_cast<int>(bags.size()); }
  [[nodiscard]] const std::vector<int> &bag(int id) const { return bags.at(static_cast<std::size_t>(id) - 1); }
  /// max |χ(n)| - 1 (so -1 when every bag is empty).
  [[nodiscard]] int width() const;
  /// Neighbor lists indexed by bag id (index 0 unused), ascending.
  [[nodiscard]] std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const TreeDecomposition &, const TreeDecomposition &) = default;
};

/// Parses one PACE `.td` document. The declared width is ignored in favour of
/// the bags. Throws ParseError for bad ids, duplicate bags, vertices out of
/// range, or an edge set that is not a spanning tree of the bags.
[[nodiscard]] TreeDecomposition parse_td(std::string_view text);

/// PACE `.td` text: solution line, bag lines in id order, then edges.
[[nodiscard]] std::string write_td(const TreeDecomposition &td);

/// Checks vertex coverage, edge coverage and running intersection against `g`,
/// plus tree shape. Reports every violation found.
[[nodiscard]] Violations td_validate(const TreeDecomposition &td, const Graph &g);

/// Decomposition induced by eliminating vertices in `order` (a permutation of 1..n).
[[nodiscard]] TreeDecomposition td_from_elimination_order(const Graph &g, const std::vector<int> &order);

/// Decomposition from the greedy min-fill elimination order.
[[nodiscard]] TreeDecomposition build_td_minfill(const Graph &g);

/// Splits a stream of concatenated PACE documents at each `s td` line.
/// Lines before the first solution line belong to the first document.
class TdStreamReader {
public:
  explicit TdStreamReader(std::istream &in) : in_(in) {}

  /// Text of the next complete document, or nullopt at end of stream.
  [[nodiscard]] std::optional<std::string> next_document();

private:
  std::istream &in_;
  std::optional<std::string> carry_; // solution line that opened the next document
};

} // namespace pjt

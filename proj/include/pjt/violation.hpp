#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pjt {

enum class ViolationKind {
  Structure,           // not a tree, bad ids, header mismatch
  LeafMapping,         // leaf <-> clause mapping is not a bijection
  Partition,           // project-join tree property 1
  Descendant,          // project-join tree property 2
  VertexCoverage,      // tree decomposition property 1
  EdgeCoverage,        // tree decomposition property 2
  RunningIntersection, // tree decomposition property 3
};

struct Violation {
  ViolationKind kind;
  std::string message;
  int subject = 0; // offending vertex, variable or node id when there is one
};

using Violations = std::vector<Violation>;

[[nodiscard]] constexpr std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
  case ViolationKind::Structure: return "structure";
  case ViolationKind::LeafMapping: return "leaf-mapping";
  case ViolationKind::Partition: return "property-1";
  case ViolationKind::Descendant: return "property-2";
  case ViolationKind::VertexCoverage: return "property-1";
  case ViolationKind::EdgeCoverage: return "property-2";
  case ViolationKind::RunningIntersection: return "property-3";
  }
  return "unknown";
}

} // namespace pjt

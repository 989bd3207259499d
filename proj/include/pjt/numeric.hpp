#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pjt {

inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteTolerance = 1e-12;

/// |a - b| <= max(rel * max(|a|, |b|), abs).
[[nodiscard]] bool approx_equal(double a, double b, double rel = kRelativeTolerance,
                                double abs = kAbsoluteTolerance) noexcept;

/// Shortest decimal text that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::optional<double> parse_double(std::string_view token) noexcept;
[[nodiscard]] std::optional<long long> parse_integer(std::string_view token) noexcept;

} // namespace pjt

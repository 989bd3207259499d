#include "pjt/numeric.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace pjt {

bool approx_equal(double a, double b, double rel, double abs) noexcept {
  const double diff = std::fabs(a - b);
  return diff <= std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs);
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), end);
}

std::optional<double> parse_double(std::string_view token) noexcept {
  if (!token.empty() && token.front() == '+')
    token.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
    return std::nullopt;
  return value;
}

std::optional<long long> parse_integer(std::string_view token) noexcept {
  if (!token.empty() && token.front() == '+')
    token.remove_prefix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
    return std::nullopt;
  return value;
}

} // namespace pjt

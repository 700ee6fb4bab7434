#include "argus/numeric_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace argus {

std::string shortest(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*e", digits - 1, x);
  return std::strtod(buf.data(), nullptr);
}

std::string fixed(double x, int decimals) {
  std::array<char, 48> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, x);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

bool parse_real(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace argus

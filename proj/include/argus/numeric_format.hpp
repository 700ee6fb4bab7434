#pragma once

#include <string>

namespace argus {

/// Shortest decimal that parses back to exactly `x`.
std::string shortest(double x);

/// `x` rounded to `digits` significant decimal digits.
double round_significant(double x, int digits = 12);

/// printf-style fixed notation with `decimals` digits after the point.
std::string fixed(double x, int decimals);

/// Parses a whole string as a decimal real; false on any trailing input.
bool parse_real(const std::string& text, double& out);

}  // namespace argus

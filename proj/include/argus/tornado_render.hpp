#pragma once

#include <string>

#include "argus/sensitivity.hpp"

namespace argus {

/// Width of the ASCII bar track, covering confidences 0..1.
inline constexpr int kTornadoColumns = 40;

/// One line per entry in report order: label, [low, high] interval and a bar
/// where `=` spans the interval and `|` marks the baseline.
std::string render_tornado_text(const TornadoReport& report,
                                std::size_t top_k = static_cast<std::size_t>(-1));

/// Standalone SVG tornado chart: ordered horizontal intervals around a
/// vertical baseline line on a 0..1 axis.
std::string render_tornado_svg(const TornadoReport& report,
                               std::size_t top_k = static_cast<std::size_t>(-1));

}  // namespace argus

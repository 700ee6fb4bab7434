#include "argus/dot_export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "argus/numeric_format.hpp"

namespace argus {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string_view shape_of(Origin origin) {
  switch (origin) {
    case Origin::Leaf: return "ellipse";
    case Origin::Derived: return "box";
    case Origin::Intermediate: return "diamond";
  }
  return "ellipse";
}

}  // namespace

std::string confidence_color(double g) {
  g = std::clamp(g, 0.0, 1.0);
  const int red = static_cast<int>(std::lround(255.0 * (1.0 - g)));
  const int green = static_cast<int>(std::lround(255.0 * g));
  std::array<char, 8> buf{};
  std::snprintf(buf.data(), buf.size(), "#%02x%02x00", red, green);
  return buf.data();
}

std::string export_dot(const ConfidenceNetwork& network,
                       const PropagationResult* result) {
  std::vector<std::size_t> order(network.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return network.node(a).id < network.node(b).id;
  });

  std::string out = "digraph confidence {\n  rankdir=BT;\n";
  for (std::size_t i : order) {
    const auto& node = network.node(i);
    std::string label = node.id;
    out += "  " + quoted(node.id) + " [shape=" +
           std::string(shape_of(node.origin));
    if (result != nullptr) {
      const double g = result->at(node.id);
      label += "\\n" + fixed(g, 4);
      out += ", style=filled, fillcolor=" + quoted(confidence_color(g));
    }
    // Labels are escaped by hand: "\n" must survive as a DOT line break.
    out += ", label=\"" + label + "\"];\n";
  }
  for (std::size_t i : order) {
    const auto& node = network.node(i);
    if (node.is_leaf()) continue;
    for (std::size_t k = 0; k < node.parents.size(); ++k) {
      out += "  " + quoted(node.parents[k]) + " -> " + quoted(node.id) +
             " [label=" + quoted(shortest(weight(*node.combinator, k))) + "];\n";
    }
  }
  return out + "}\n";
}

}  // namespace argus

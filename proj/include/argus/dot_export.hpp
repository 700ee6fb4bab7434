#pragma once

#include <string>

#include "argus/confidence_network.hpp"
#include "argus/propagation.hpp"

namespace argus {

/// Graphviz digraph of the network, premises pointing at the claims they
/// support. Leaves are ellipses, derived nodes boxes, generated
/// intermediates diamonds; edge labels carry weights. With a result, labels
/// gain g to 4 decimals and nodes are filled on a red-to-green ramp.
/// Nodes and edges are emitted in id order.
std::string export_dot(const ConfidenceNetwork& network,
                       const PropagationResult* result = nullptr);

/// `#rrggbb` on the linear ramp 0 = red, 1 = green.
std::string confidence_color(double g);

}  // namespace argus

#pragma once

// Pieces shared by the parallel and reference tornado implementations.

#include <vector>

#include "argus/sensitivity.hpp"

namespace argus::detail {

struct TornadoSetup {
  const ConfidenceNetwork* network = nullptr;
  std::vector<SensitivityVariable> variables;
  std::vector<double> leaf_values;
  std::vector<const Combinator*> table;
  std::vector<std::size_t> leaf_index;  // node index per variable
  std::size_t target = 0;
  double baseline_target = 0.0;
};

TornadoSetup prepare_tornado(const ConfidenceNetwork& network,
                             const Assessment& assessment,
                             std::string_view target,
                             std::span<const std::string> variables);

/// Target value with variable `k` of `setup` set to `x`. `values` and
/// `scratch` are caller-owned work buffers.
double excursion(const TornadoSetup& setup, std::size_t k, double x,
                 std::vector<double>& values, std::vector<double>& scratch);

TornadoEntry make_entry(const TornadoSetup& setup, std::size_t k, double at_min,
                        double at_max);

TornadoReport finish_tornado(const TornadoSetup& setup,
                             const Assessment& assessment,
                             std::vector<TornadoEntry> entries);

}  // namespace argus::detail

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "argus/confidence_network.hpp"
#include "argus/propagation.hpp"

namespace argus {

/// Excursion endpoints of every tornado variable.
inline constexpr double kExcursionMin = 0.0;
inline constexpr double kExcursionMax = 1.0;

struct SensitivityVariable {
  enum class Kind { LeafConfidence, Weight, Leak };
  Kind kind = Kind::LeafConfidence;
  NodeId node;
  std::size_t index = 0;  // parent index, for weights
  std::string label;      // g(B), w(A,B), v(A)

  /// Override key: `B`, `w:A:0`, `v:A`.
  std::string key() const;
  bool operator==(const SensitivityVariable&) const = default;
};

/// Which excursion endpoint raises the target.
enum class Raises { AtMax, AtMin, Neither };

struct TornadoEntry {
  SensitivityVariable variable;
  double baseline_target = 0.0;
  double value_at_min = 0.0;
  double value_at_max = 0.0;
  double width = 0.0;

  double low() const { return std::min(value_at_min, value_at_max); }
  double high() const { return std::max(value_at_min, value_at_max); }
  Raises raises() const;
  bool operator==(const TornadoEntry&) const = default;
};

struct TornadoReport {
  NodeId target;
  Assessment baseline;
  double baseline_target = 0.0;
  /// Width descending, then label ascending.
  std::vector<TornadoEntry> entries;
  std::size_t propagations = 0;

  bool operator==(const TornadoReport&) const = default;
};

/// Every leaf confidence, every inference weight, and the leak of each
/// noisy-AND with an explicit leak. Leaves first (by id), then parameters in
/// topological node order.
std::vector<SensitivityVariable> sensitivity_variables(
    const ConfidenceNetwork& network);

/// One-at-a-time excursions of each selected variable to 0 and 1 with all
/// others at baseline. A weight excursion on a default-leak noisy-AND
/// re-derives the leak. Excursions run in parallel under OpenMP.
///
/// `variables` selects variables by key; empty selects all. Throws
/// UnknownTarget / UnknownVariable.
TornadoReport tornado(const ConfidenceNetwork& network,
                      const Assessment& assessment, std::string_view target,
                      std::span<const std::string> variables = {});

/// Serial reference for tornado(); same contract, same result bit for bit.
TornadoReport tornado_ref(const ConfidenceNetwork& network,
                          const Assessment& assessment, std::string_view target,
                          std::span<const std::string> variables = {});

/// The `top_k` most influential variables (clipped to the entry count).
std::vector<SensitivityVariable> rank_weak_points(const TornadoReport& report,
                                                  std::size_t top_k);

}  // namespace argus

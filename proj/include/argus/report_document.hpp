#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "argus/confidence_network.hpp"
#include "argus/propagation.hpp"
#include "argus/sensitivity.hpp"

namespace argus {

/// Significant digits kept for confidence values in reports.
inline constexpr int kReportDigits = 12;

/// The JSON report written by the CLI and returned by the service. Values
/// are rounded to kReportDigits significant digits when the document is
/// built, so serialize/parse is an exact round trip.
struct ReportDocument {
  struct Entry {
    std::string variable;  // display label, e.g. g(B)
    std::string key;       // override key, e.g. B or w:A:0
    double at_min = 0.0;
    double at_max = 0.0;
    double width = 0.0;
    std::string raises;  // "max", "min" or "none"
    bool operator==(const Entry&) const = default;
  };
  struct Tornado {
    NodeId target;
    double baseline = 0.0;
    std::vector<Entry> entries;
    bool operator==(const Tornado&) const = default;
  };

  NodeId root;
  double root_confidence = 0.0;
  std::map<NodeId, double> per_node;
  std::optional<Tornado> tornado;

  bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report(const PropagationResult& result,
                           const TornadoReport* tornado = nullptr);
ReportDocument::Tornado make_tornado_section(const TornadoReport& report);

nlohmann::ordered_json to_json(const ReportDocument& report);
nlohmann::ordered_json to_json(const ReportDocument::Tornado& tornado);
ReportDocument report_from_json(const nlohmann::json& document);

/// Pretty-printed JSON with a trailing newline; byte-stable.
std::string serialize_report(const ReportDocument& report);
ReportDocument parse_report(std::string_view text);

/// Network structure: root plus nodes in topological order with their
/// combinators.
nlohmann::ordered_json network_to_json(const ConfidenceNetwork& network);

}  // namespace argus

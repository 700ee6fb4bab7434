#include "argus/report_document.hpp"

#include "argus/error.hpp"
#include "argus/numeric_format.hpp"

namespace argus {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double rounded(double x) { return round_significant(x, kReportDigits); }

std::string raises_name(Raises r) {
  switch (r) {
    case Raises::AtMax: return "max";
    case Raises::AtMin: return "min";
    case Raises::Neither: return "none";
  }
  return "none";
}

template <typename T>
T field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::SchemaError, std::string("missing '") + key + "'",
                path);
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what(), path + "." + key);
  }
}

}  // namespace

ReportDocument::Tornado make_tornado_section(const TornadoReport& report) {
  ReportDocument::Tornado t;
  t.target = report.target;
  t.baseline = rounded(report.baseline_target);
  for (const auto& e : report.entries) {
    t.entries.push_back({e.variable.label, e.variable.key(),
                         rounded(e.value_at_min), rounded(e.value_at_max),
                         rounded(e.width), raises_name(e.raises())});
  }
  return t;
}

ReportDocument make_report(const PropagationResult& result,
                           const TornadoReport* tornado) {
  ReportDocument doc;
  doc.root = result.root;
  doc.root_confidence = rounded(result.root_confidence);
  for (const auto& [id, g] : result.values) doc.per_node[id] = rounded(g);
  if (tornado != nullptr) doc.tornado = make_tornado_section(*tornado);
  return doc;
}

ordered_json to_json(const ReportDocument::Tornado& tornado) {
  ordered_json t;
  t["target"] = tornado.target;
  t["baseline"] = tornado.baseline;
  auto& entries = t["entries"] = ordered_json::array();
  for (const auto& e : tornado.entries) {
    ordered_json j;
    j["variable"] = e.variable;
    j["key"] = e.key;
    j["at_min"] = e.at_min;
    j["at_max"] = e.at_max;
    j["width"] = e.width;
    j["raises"] = e.raises;
    entries.push_back(std::move(j));
  }
  return t;
}

ordered_json to_json(const ReportDocument& report) {
  ordered_json out;
  out["root"] = report.root;
  out["root_confidence"] = report.root_confidence;
  auto& per_node = out["per_node"] = ordered_json::object();
  for (const auto& [id, g] : report.per_node) per_node[id] = g;
  if (report.tornado) out["tornado"] = to_json(*report.tornado);
  return out;
}

ReportDocument report_from_json(const json& document) {
  if (!document.is_object()) {
    throw Error(ErrorCode::SchemaError, "report must be an object");
  }
  ReportDocument doc;
  doc.root = field<std::string>(document, "root", "");
  doc.root_confidence = field<double>(document, "root_confidence", "");
  doc.per_node = field<std::map<std::string, double>>(document, "per_node", "");
  if (auto it = document.find("tornado"); it != document.end()) {
    ReportDocument::Tornado t;
    t.target = field<std::string>(*it, "target", "tornado");
    t.baseline = field<double>(*it, "baseline", "tornado");
    const auto entries = field<json>(*it, "entries", "tornado");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string p = "tornado.entries[" + std::to_string(i) + "]";
      const auto& e = entries[i];
      t.entries.push_back({field<std::string>(e, "variable", p),
                           field<std::string>(e, "key", p),
                           field<double>(e, "at_min", p),
                           field<double>(e, "at_max", p),
                           field<double>(e, "width", p),
                           field<std::string>(e, "raises", p)});
    }
    doc.tornado = std::move(t);
  }
  return doc;
}

std::string serialize_report(const ReportDocument& report) {
  return to_json(report).dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  }
  return report_from_json(doc);
}

ordered_json network_to_json(const ConfidenceNetwork& network) {
  ordered_json out;
  out["root"] = network.root();
  auto& nodes = out["nodes"] = ordered_json::array();
  for (const auto& node : network.nodes()) {
    ordered_json n;
    n["id"] = node.id;
    n["origin"] = std::string(to_string(node.origin));
    n["source"] = node.source;
    n["parents"] = node.parents;
    if (node.combinator) {
      const auto& c = *node.combinator;
      ordered_json cj;
      cj["type"] = std::string(combinator_name(c));
      std::vector<double> weights;
      for (std::size_t k = 0; k < arity(c); ++k) weights.push_back(weight(c, k));
      cj["weights"] = weights;
      if (const auto* a = std::get_if<NoisyAnd>(&c)) {
        cj["leak"] = a->leak;
        cj["leak_is_default"] = a->leak_is_default;
      }
      n["combinator"] = std::move(cj);
    }
    nodes.push_back(std::move(n));
  }
  return out;
}

}  // namespace argus

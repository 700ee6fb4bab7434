#include "argus/model_document.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "argus/numeric_format.hpp"

namespace argus {

using nlohmann::json;

namespace {

using LineMap = std::map<std::string, int>;

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// Plain scalars become numbers/bools/null where they read as such; quoted
// scalars always stay strings.
json yaml_to_json(const YAML::Node& node, const std::string& path,
                  LineMap& lines) {
  if (node.Mark().line >= 0) lines.emplace(path, node.Mark().line + 1);
  switch (node.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null: return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      if (node.Tag() == "!") return s;
      if (s == "~" || s == "null" || s == "Null" || s == "NULL") return nullptr;
      if (s == "true" || s == "True") return true;
      if (s == "false" || s == "False") return false;
      double value = 0.0;
      if (parse_real(s, value)) return value;
      return s;
    }
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(yaml_to_json(node[i], indexed(path, i), lines));
      }
      return out;
    }
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) {
        const std::string key = kv.first.Scalar();
        if (out.contains(key)) {
          // Reported by the schema reader through a sentinel.
          out["\x01duplicate"].push_back(key);
          continue;
        }
        out[key] = yaml_to_json(kv.second, join(path, key), lines);
      }
      return out;
    }
  }
  return nullptr;
}

class SchemaReader {
 public:
  explicit SchemaReader(const LineMap* lines) : lines_(lines) {}

  ModelInput read(const json& doc) {
    ModelInput input;
    const json root = doc.is_null() ? json::object() : doc;
    if (!root.is_object()) {
      fail("", "document must be a mapping of top-level keys");
      return input;
    }
    check_keys(root, "",
               {"version", "nodes", "edges", "arguments", "confidence",
                "context_weights"});

    if (const json* v = require(root, "", "version")) {
      double version = 0;
      if (!v->is_number() || (version = v->get<double>()) != kModelDocumentVersion) {
        fail("version", "unsupported document version (expected " +
                            std::to_string(kModelDocumentVersion) + ")");
      }
    }
    if (const json* nodes = require(root, "", "nodes")) {
      for_each_item(*nodes, "nodes", [&](const json& item, const std::string& p) {
        read_node(item, p, input);
      });
    }
    if (const json* edges = optional(root, "edges")) {
      for_each_item(*edges, "edges", [&](const json& item, const std::string& p) {
        read_edge(item, p, input);
      });
    }
    if (const json* args = optional(root, "arguments")) {
      for_each_item(*args, "arguments", [&](const json& item, const std::string& p) {
        read_argument(item, p, input);
      });
    }
    if (const json* conf = optional(root, "confidence")) {
      read_unit_map(*conf, "confidence", input.confidences);
    }
    if (const json* cw = optional(root, "context_weights")) {
      read_unit_map(*cw, "context_weights", input.context_weights);
    }
    return input;
  }

  std::vector<Violation> violations;

 private:
  void fail(const std::string& path, std::string message,
            ErrorCode code = ErrorCode::SchemaError) {
    violations.push_back({code, locate(path, std::move(message)), path});
  }

  std::string locate(const std::string& path, std::string message) const {
    if (lines_ == nullptr) return message;
    auto it = lines_->find(path);
    if (it == lines_->end()) return message;
    return message + " (line " + std::to_string(it->second) + ")";
  }

  void check_keys(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "\x01duplicate") {
        for (const auto& k : it.value()) {
          fail(join(path, k.get<std::string>()), "duplicate key");
        }
        continue;
      }
      bool ok = false;
      for (auto a : allowed) ok = ok || it.key() == a;
      if (!ok) fail(join(path, it.key()), "unknown key '" + it.key() + "'");
    }
  }

  const json* optional(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json* require(const json& obj, const std::string& path,
                      const std::string& key) {
    const json* v = optional(obj, key);
    if (v == nullptr) fail(join(path, key), "missing required key '" + key + "'");
    return v;
  }

  template <typename F>
  void for_each_item(const json& list, const std::string& path, F&& f) {
    if (!list.is_array()) {
      fail(path, "expected a list");
      return;
    }
    for (std::size_t i = 0; i < list.size(); ++i) f(list[i], indexed(path, i));
  }

  bool expect_object(const json& item, const std::string& path) {
    if (item.is_object()) return true;
    fail(path, "expected a mapping");
    return false;
  }

  std::optional<std::string> text(const json& obj, const std::string& path,
                                  const std::string& key, bool required = true) {
    const json* v = required ? require(obj, path, key) : optional(obj, key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      fail(join(path, key), "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<double> unit(const json& value, const std::string& path) {
    if (!value.is_number()) {
      fail(path, "expected a decimal number");
      return std::nullopt;
    }
    const double x = value.get<double>();
    if (!(x >= 0.0 && x <= 1.0)) {
      fail(path, "value " + shortest(x) + " lies outside [0,1]");
      return std::nullopt;
    }
    return x;
  }

  template <typename Enum>
  std::optional<Enum> choice(
      const json& obj, const std::string& path, const std::string& key,
      std::initializer_list<std::pair<std::string_view, Enum>> options) {
    auto s = text(obj, path, key);
    if (!s) return std::nullopt;
    for (const auto& [name, value] : options) {
      if (*s == name) return value;
    }
    std::string names;
    for (const auto& o : options) names += (names.empty() ? "" : ", ") + std::string(o.first);
    fail(join(path, key), "'" + *s + "' is not one of: " + names);
    return std::nullopt;
  }

  void read_node(const json& item, const std::string& path, ModelInput& input) {
    if (!expect_object(item, path)) return;
    check_keys(item, path, {"id", "kind", "statement"});
    auto id = text(item, path, "id");
    auto kind = choice<NodeKind>(item, path, "kind",
                                 {{"goal", NodeKind::Goal},
                                  {"strategy", NodeKind::Strategy},
                                  {"solution", NodeKind::Solution},
                                  {"context", NodeKind::Context}});
    auto statement = text(item, path, "statement", false);
    if (id && kind) {
      input.nodes.push_back({*id, *kind, statement.value_or("")});
    }
  }

  void read_edge(const json& item, const std::string& path, ModelInput& input) {
    if (!expect_object(item, path)) return;
    check_keys(item, path, {"kind", "parent", "child"});
    auto kind = choice<EdgeKind>(item, path, "kind",
                                 {{"supported_by", EdgeKind::SupportedBy},
                                  {"in_context_of", EdgeKind::InContextOf}});
    auto parent = text(item, path, "parent");
    auto child = text(item, path, "child");
    if (kind && parent && child) input.edges.push_back({*kind, *parent, *child});
  }

  std::optional<ArgumentGroup> read_group(const json& obj,
                                          const std::string& path) {
    ArgumentGroup group;
    bool ok = true;
    auto kind = choice<ArgumentKind>(
        obj, path, "type",
        {{"alternative", ArgumentKind::Alternative},
         {"complementary", ArgumentKind::Complementary}});
    if (kind) group.kind = *kind; else ok = false;
    if (const json* leak = optional(obj, "leak")) {
      auto v = unit(*leak, join(path, "leak"));
      if (v) group.leak_override = v; else ok = false;
    }
    if (const json* children = require(obj, path, "children")) {
      const std::size_t before = violations.size();
      for_each_item(*children, join(path, "children"),
                    [&](const json& c, const std::string& cp) {
                      if (auto child = read_child(c, cp)) {
                        group.children.push_back(std::move(*child));
                      }
                    });
      ok = ok && violations.size() == before;
    } else {
      ok = false;
    }
    if (!ok) return std::nullopt;
    return group;
  }

  std::optional<ArgumentChild> read_child(const json& item,
                                          const std::string& path) {
    if (!expect_object(item, path)) return std::nullopt;
    check_keys(item, path, {"ref", "group", "weight"});
    ArgumentChild child;
    if (const json* w = optional(item, "weight")) {
      auto v = unit(*w, join(path, "weight"));
      if (!v) return std::nullopt;
      child.weight = *v;
    }
    const bool has_ref = optional(item, "ref") != nullptr;
    const bool has_group = optional(item, "group") != nullptr;
    if (has_ref == has_group) {
      fail(path, "child needs exactly one of 'ref' or 'group'");
      return std::nullopt;
    }
    if (has_ref) {
      auto ref = text(item, path, "ref");
      if (!ref) return std::nullopt;
      child.ref = *ref;
      return child;
    }
    const json& g = item["group"];
    const std::string gpath = join(path, "group");
    if (!expect_object(g, gpath)) return std::nullopt;
    check_keys(g, gpath, {"type", "children", "leak"});
    auto group = read_group(g, gpath);
    if (!group) return std::nullopt;
    child.group = std::make_shared<const ArgumentGroup>(std::move(*group));
    return child;
  }

  void read_argument(const json& item, const std::string& path,
                     ModelInput& input) {
    if (!expect_object(item, path)) return;
    check_keys(item, path, {"goal", "type", "children", "leak"});
    auto goal = text(item, path, "goal");
    auto group = read_group(item, path);
    if (goal && group) input.specs.push_back({*goal, std::move(*group)});
  }

  void read_unit_map(const json& obj, const std::string& path,
                     std::map<NodeId, double>& out) {
    if (!obj.is_object()) {
      fail(path, "expected a mapping of id to value");
      return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it.key() == "\x01duplicate") {
        for (const auto& k : it.value()) {
          fail(join(path, k.get<std::string>()), "duplicate key");
        }
        continue;
      }
      if (auto v = unit(it.value(), join(path, it.key()))) out[it.key()] = *v;
    }
  }

  const LineMap* lines_;
};

ArgumentModel read_model(const json& doc, const LineMap* lines) {
  SchemaReader reader(lines);
  ModelInput input = reader.read(doc);
  if (!reader.violations.empty()) throw ValidationError(reader.violations);
  try {
    return build_model(std::move(input));
  } catch (const ValidationError& e) {
    if (lines == nullptr) throw;
    auto violations = e.violations();
    for (auto& v : violations) {
      // Use the closest enclosing path that has a recorded line.
      std::string p = v.path;
      while (!p.empty()) {
        auto it = lines->find(p);
        if (it != lines->end()) {
          v.message += " (line " + std::to_string(it->second) + ")";
          break;
        }
        const auto cut = p.find_last_of(".[");
        p = cut == std::string::npos ? std::string() : p.substr(0, cut);
      }
    }
    throw ValidationError(std::move(violations));
  }
}

nlohmann::ordered_json group_to_json(const ArgumentGroup& group);

nlohmann::ordered_json child_to_json(const ArgumentChild& child) {
  nlohmann::ordered_json out;
  if (child.is_group()) {
    out["group"] = group_to_json(*child.group);
  } else {
    out["ref"] = *child.ref;
  }
  out["weight"] = child.weight;
  return out;
}

nlohmann::ordered_json group_to_json(const ArgumentGroup& group) {
  nlohmann::ordered_json out;
  out["type"] = std::string(to_string(group.kind));
  nlohmann::ordered_json children = nlohmann::ordered_json::array();
  for (const auto& c : group.children) children.push_back(child_to_json(c));
  out["children"] = std::move(children);
  if (group.leak_override) out["leak"] = *group.leak_override;
  return out;
}

}  // namespace

ArgumentModel parse_model(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ValidationError({{ErrorCode::SyntaxError,
                            e.msg + " (line " + std::to_string(e.mark.line + 1) +
                                ", column " + std::to_string(e.mark.column + 1) +
                                ")",
                            ""}});
  }
  LineMap lines;
  const json doc = yaml_to_json(root, "", lines);
  return read_model(doc, &lines);
}

ArgumentModel model_from_json(const json& document) {
  return read_model(document, nullptr);
}

ArgumentModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::SyntaxError, "cannot read '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

nlohmann::ordered_json model_to_json(const ArgumentModel& model) {
  nlohmann::ordered_json out;
  out["version"] = kModelDocumentVersion;
  auto& nodes = out["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : model.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"kind", std::string(to_string(n.kind))},
                     {"statement", n.statement}});
  }
  if (!model.edges().empty()) {
    auto& edges = out["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : model.edges()) {
      edges.push_back({{"kind", std::string(to_string(e.kind))},
                       {"parent", e.parent},
                       {"child", e.child}});
    }
  }
  if (!model.specs().empty()) {
    auto& args = out["arguments"] = nlohmann::ordered_json::array();
    for (const auto& s : model.specs()) {
      nlohmann::ordered_json a;
      a["goal"] = s.owner;
      const auto group = group_to_json(s.group);
      for (const auto& [k, v] : group.items()) a[k] = v;
      args.push_back(std::move(a));
    }
  }
  if (!model.leaf_confidences().empty()) {
    auto& conf = out["confidence"] = nlohmann::ordered_json::object();
    for (const auto& [id, g] : model.leaf_confidences()) conf[id] = g;
  }
  if (!model.context_weights().empty()) {
    auto& cw = out["context_weights"] = nlohmann::ordered_json::object();
    for (const auto& [id, w] : model.context_weights()) cw[id] = w;
  }
  return out;
}

std::string serialize_model(const ArgumentModel& model) {
  std::string out;
  const auto document = model_to_json(model);
  for (const auto& [key, value] : document.items()) {
    out += key + ": " +
           value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) +
           "\n";
  }
  return out;
}

}  // namespace argus

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "argus/argument_model.hpp"

namespace argus {

/// Current interchange format version (the required `version` key).
inline constexpr int kModelDocumentVersion = 1;

/// Parses a model document (YAML, or JSON as its subset) and validates it.
/// Throws ValidationError; every violation carries a document path such as
/// `edges[3].child`, and parse-time violations also name the source line.
ArgumentModel parse_model(std::string_view text);

/// Same as parse_model for an already-decoded JSON tree (service bodies).
ArgumentModel model_from_json(const nlohmann::json& document);

ArgumentModel load_model(const std::filesystem::path& path);

nlohmann::ordered_json model_to_json(const ArgumentModel& model);

/// Canonical text: one `key: <json>` line per present top-level key in the
/// fixed order version, nodes, edges, arguments, confidence,
/// context_weights. Valid YAML; LF line endings.
std::string serialize_model(const ArgumentModel& model);

}  // namespace argus

#include "argus/error.hpp"

#include <algorithm>

namespace argus {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::IllegalEdge: return "IllegalEdge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::MissingConfidence: return "MissingConfidence";
    case ErrorCode::UnexpectedValue: return "UnexpectedValue";
    case ErrorCode::InvalidArgumentSpec: return "InvalidArgumentSpec";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyWeights: return "EmptyWeights";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooManyParents: return "TooManyParents";
    case ErrorCode::IncompleteAssessment: return "IncompleteAssessment";
    case ErrorCode::UnknownLeaf: return "UnknownLeaf";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

namespace {

std::string with_path(const std::string& message, const std::string& path) {
  return path.empty() ? message : path + ": " + message;
}

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) out += "\n  " + format_violation(v);
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string path)
    : std::runtime_error(with_path(message, path)),
      code_(code),
      path_(std::move(path)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)),
      violations_(std::move(violations)) {}

bool ValidationError::has(ErrorCode code) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [code](const Violation& v) { return v.code == code; });
}

std::string format_violation(const Violation& v) {
  std::string out(to_string(v.code));
  if (!v.path.empty()) out += " at " + v.path;
  return out + ": " + v.message;
}

}  // namespace argus

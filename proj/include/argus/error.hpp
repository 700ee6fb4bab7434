#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace argus {

enum class ErrorCode {
  // model validation
  DuplicateId,
  InvalidId,
  UnknownReference,
  IllegalEdge,
  CycleDetected,
  MultipleRoots,
  ValueOutOfRange,
  MissingConfidence,
  UnexpectedValue,
  InvalidArgumentSpec,
  // document parsing
  SyntaxError,
  SchemaError,
  // evaluation
  EmptyWeights,
  LengthMismatch,
  TooManyParents,
  IncompleteAssessment,
  UnknownLeaf,
  UnknownTarget,
  UnknownVariable,
  InternalConsistency,
};

std::string_view to_string(ErrorCode code);

/// One problem found while validating or parsing. `path` locates it in the
/// source document when known (e.g. `edges[3].child`).
struct Violation {
  ErrorCode code;
  std::string message;
  std::string path;

  bool operator==(const Violation&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

/// Thrown when a model is rejected; carries every violation, not just the
/// first one found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }
  bool has(ErrorCode code) const;

 private:
  std::vector<Violation> violations_;
};

std::string format_violation(const Violation& v);

}  // namespace argus

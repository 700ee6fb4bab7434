#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "argus/error.hpp"

namespace argus {

using NodeId = std::string;

/// Prefix reserved for nodes generated by the confidence-network transform.
inline constexpr std::string_view kIntermediatePrefix = "I_";

enum class NodeKind { Goal, Strategy, Solution, Context };
enum class EdgeKind { SupportedBy, InContextOf };
enum class ArgumentKind { Alternative, Complementary };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::string_view to_string(ArgumentKind kind);

struct ArgumentNode {
  NodeId id;
  NodeKind kind;
  std::string statement;

  bool operator==(const ArgumentNode&) const = default;
};

/// `parent` is the claim being supported or contextualized.
struct ArgumentEdge {
  EdgeKind kind;
  NodeId parent;
  NodeId child;

  bool operator==(const ArgumentEdge&) const = default;
};

struct ArgumentGroup;

/// A child of an argument spec: either a reference to a supporting node or a
/// nested group of children combined on their own.
struct ArgumentChild {
  std::optional<NodeId> ref;
  std::shared_ptr<const ArgumentGroup> group;
  double weight = 1.0;

  bool is_group() const { return group != nullptr; }
  bool operator==(const ArgumentChild& other) const;
};

struct ArgumentGroup {
  ArgumentKind kind = ArgumentKind::Complementary;
  std::vector<ArgumentChild> children;
  std::optional<double> leak_override;

  bool operator==(const ArgumentGroup&) const = default;
};

/// How a goal's supporting children combine. The top level of the tree is the
/// goal itself; nested groups become generated intermediate nodes.
struct ArgumentSpec {
  NodeId owner;
  ArgumentGroup group;

  bool operator==(const ArgumentSpec&) const = default;
};

/// Raw, unvalidated inputs to `build_model`.
struct ModelInput {
  std::vector<ArgumentNode> nodes;
  std::vector<ArgumentEdge> edges;
  std::vector<ArgumentSpec> specs;
  std::map<NodeId, double> confidences;
  std::map<NodeId, double> context_weights;
};

/// A validated GSN model. Immutable once built; only `build_model` creates it.
class ArgumentModel {
 public:
  const std::vector<ArgumentNode>& nodes() const { return nodes_; }
  const std::vector<ArgumentEdge>& edges() const { return edges_; }
  const std::vector<ArgumentSpec>& specs() const { return specs_; }
  const std::map<NodeId, double>& leaf_confidences() const {
    return confidences_;
  }
  const std::map<NodeId, double>& context_weights() const {
    return context_weights_;
  }
  const NodeId& root() const { return root_; }

  const ArgumentNode* find(std::string_view id) const;
  const ArgumentSpec* spec_for(std::string_view goal) const;

  /// Contexts attached to `goal`, including those attached to strategies
  /// below it, in declaration order.
  std::vector<NodeId> contexts_of(std::string_view goal) const;
  double context_weight(std::string_view context) const;

  bool operator==(const ArgumentModel&) const = default;

 private:
  friend ArgumentModel build_model(ModelInput input);

  std::vector<ArgumentNode> nodes_;
  std::vector<ArgumentEdge> edges_;
  std::vector<ArgumentSpec> specs_;
  std::map<NodeId, double> confidences_;
  std::map<NodeId, double> context_weights_;
  NodeId root_;
  std::map<NodeId, std::size_t, std::less<>> index_;
  // SupportedBy children per node (declaration index), in edge order.
  std::vector<std::vector<std::size_t>> supported_by_;

  friend std::vector<NodeId> support_children(const ArgumentModel&,
                                              std::string_view);
};

/// Validates the inputs and returns the model. Throws ValidationError listing
/// every violation found.
ArgumentModel build_model(ModelInput input);

/// Directly supporting goals/solutions of `goal`, with strategies flattened.
std::vector<NodeId> support_children(const ArgumentModel& model,
                                     std::string_view goal);

/// Solutions, contexts and undeveloped goals.
std::vector<NodeId> leaves(const ArgumentModel& model);

bool is_valid_node_id(std::string_view id);

}  // namespace argus

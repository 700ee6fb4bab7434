#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argus/argument_model.hpp"
#include "argus/combinators.hpp"

namespace argus {

enum class Origin { Leaf, Derived, Intermediate };

std::string_view to_string(Origin origin);

/// A node of the confidence network. `source` is the argument node it stands
/// for; intermediates carry the goal whose argument generated them.
struct ConfidenceNode {
  NodeId id;
  Origin origin = Origin::Leaf;
  NodeId source;
  std::vector<NodeId> parents;
  std::optional<Combinator> combinator;

  bool is_leaf() const { return !combinator.has_value(); }
  bool operator==(const ConfidenceNode&) const = default;
};

/// Feed-forward DAG with a single root (sink). Nodes are stored in the
/// deterministic topological order: parents first, ties by id.
class ConfidenceNetwork {
 public:
  /// Checks the structural invariants and orders the nodes. Throws
  /// Error(InternalConsistency) when they do not hold.
  ConfidenceNetwork(std::vector<ConfidenceNode> nodes, NodeId root);

  const std::vector<ConfidenceNode>& nodes() const { return nodes_; }
  const ConfidenceNode& node(std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  const NodeId& root() const { return nodes_[root_index_].id; }
  std::size_t root_index() const { return root_index_; }

  const ConfidenceNode* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  std::span<const std::size_t> parent_indices(std::size_t i) const {
    return {parent_flat_.data() + parent_offsets_[i],
            parent_offsets_[i + 1] - parent_offsets_[i]};
  }

  /// Leaf ids, sorted.
  std::vector<NodeId> leaf_ids() const;

  bool operator==(const ConfidenceNetwork& other) const {
    return nodes_ == other.nodes_ && root_index_ == other.root_index_;
  }

 private:
  std::vector<ConfidenceNode> nodes_;
  std::size_t root_index_ = 0;
  std::map<NodeId, std::size_t, std::less<>> index_;
  std::vector<std::size_t> parent_offsets_;
  std::vector<std::size_t> parent_flat_;
};

/// Builds the confidence network of a validated model: goals become derived
/// nodes, solutions/contexts/undeveloped goals become leaves, strategies
/// vanish, contexts join their goal's noisy-AND, nested argument groups and
/// alternative arguments with contexts become generated `I_` nodes.
ConfidenceNetwork transform(const ArgumentModel& model);

std::vector<NodeId> topological_order(const ConfidenceNetwork& network);

}  // namespace argus

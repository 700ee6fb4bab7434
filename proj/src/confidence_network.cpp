#include "argus/confidence_network.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace argus {

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::Leaf: return "leaf";
    case Origin::Derived: return "derived";
    case Origin::Intermediate: return "intermediate";
  }
  return "?";
}

namespace {

[[noreturn]] void inconsistent(const std::string& message) {
  throw Error(ErrorCode::InternalConsistency, message);
}

}  // namespace

ConfidenceNetwork::ConfidenceNetwork(std::vector<ConfidenceNode> nodes,
                                     NodeId root) {
  const std::size_t n = nodes.size();
  std::map<NodeId, std::size_t, std::less<>> by_id;
  for (std::size_t i = 0; i < n; ++i) {
    if (!by_id.emplace(nodes[i].id, i).second) {
      inconsistent("duplicate network node '" + nodes[i].id + "'");
    }
  }
  if (!by_id.contains(root)) inconsistent("root '" + root + "' is not a node");

  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = nodes[i];
    if (node.is_leaf() != node.parents.empty()) {
      inconsistent("node '" + node.id +
                   "' must have parents exactly when it has a combinator");
    }
    if (node.combinator && arity(*node.combinator) != node.parents.size()) {
      inconsistent("node '" + node.id + "' combinator arity does not match " +
                   "its parent count");
    }
    std::set<std::string_view> seen;
    for (const auto& p : node.parents) {
      auto it = by_id.find(p);
      if (it == by_id.end()) {
        inconsistent("node '" + node.id + "' has unknown parent '" + p + "'");
      }
      if (!seen.insert(p).second) {
        inconsistent("node '" + node.id + "' lists parent '" + p + "' twice");
      }
      children[it->second].push_back(i);
    }
    pending[i] = node.parents.size();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (children[i].empty() && nodes[i].id != root) {
      inconsistent("node '" + nodes[i].id + "' does not reach the root");
    }
  }
  if (!children[by_id.at(root)].empty()) {
    inconsistent("root '" + root + "' feeds other nodes");
  }

  // Kahn's algorithm, smallest id first.
  using Entry = std::pair<std::string_view, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.emplace(nodes[i].id, i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t u = ready.top().second;
    ready.pop();
    order.push_back(u);
    for (std::size_t c : children[u]) {
      if (--pending[c] == 0) ready.emplace(nodes[c].id, c);
    }
  }
  if (order.size() != n) inconsistent("confidence network contains a cycle");

  nodes_.reserve(n);
  for (std::size_t u : order) nodes_.push_back(std::move(nodes[u]));
  for (std::size_t i = 0; i < n; ++i) index_.emplace(nodes_[i].id, i);
  root_index_ = index_.at(root);
  parent_offsets_.reserve(n + 1);
  parent_offsets_.push_back(0);
  for (const auto& node : nodes_) {
    for (const auto& p : node.parents) parent_flat_.push_back(index_.at(p));
    parent_offsets_.push_back(parent_flat_.size());
  }
}

const ConfidenceNode* ConfidenceNetwork::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

std::optional<std::size_t> ConfidenceNetwork::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> ConfidenceNetwork::leaf_ids() const {
  std::vector<NodeId> out;
  for (const auto& node : nodes_) {
    if (node.is_leaf()) out.push_back(node.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> topological_order(const ConfidenceNetwork& network) {
  std::vector<NodeId> out;
  out.reserve(network.size());
  for (const auto& node : network.nodes()) out.push_back(node.id);
  return out;
}

namespace {

struct Parent {
  NodeId id;
  double weight;
};

class Transformer {
 public:
  explicit Transformer(const ArgumentModel& model) : model_(model) {}

  ConfidenceNetwork run() {
    for (const auto& node : model_.nodes()) {
      switch (node.kind) {
        case NodeKind::Strategy: break;
        case NodeKind::Solution:
        case NodeKind::Context: add_leaf(node.id); break;
        case NodeKind::Goal:
          if (support_children(model_, node.id).empty()) {
            add_leaf(node.id);
          } else {
            add_goal(node.id);
          }
          break;
      }
    }
    return ConfidenceNetwork(std::move(out_), model_.root());
  }

 private:
  void add_leaf(const NodeId& id) {
    out_.push_back({id, Origin::Leaf, id, {}, std::nullopt});
  }

  static Combinator combinator_for(const ArgumentGroup& group,
                                   std::vector<double> weights) {
    if (weights.size() == 1) return Simple{weights.front()};
    if (group.kind == ArgumentKind::Alternative) {
      return NoisyOr{std::move(weights)};
    }
    if (group.leak_override) {
      return make_noisy_and(std::move(weights), *group.leak_override);
    }
    return make_noisy_and(std::move(weights));
  }

  static std::vector<double> weights_of(const std::vector<Parent>& parents) {
    std::vector<double> w;
    for (const auto& p : parents) w.push_back(p.weight);
    return w;
  }

  NodeId fresh_id(const std::vector<Parent>& parents, const NodeId& goal) {
    NodeId id(kIntermediatePrefix);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      id += (i ? "_" : "") + parents[i].id;
    }
    if (used_.insert(id).second) return id;
    NodeId scoped = id + "." + goal;
    for (int k = 2; !used_.insert(scoped).second; ++k) {
      scoped = id + "." + goal + "." + std::to_string(k);
    }
    return scoped;
  }

  NodeId add_intermediate(std::vector<Parent> parents, const ArgumentGroup& group,
                          const NodeId& goal) {
    NodeId id = fresh_id(parents, goal);
    ConfidenceNode node{id, Origin::Intermediate, goal, {}, std::nullopt};
    node.combinator = combinator_for(group, weights_of(parents));
    for (auto& p : parents) node.parents.push_back(std::move(p.id));
    out_.push_back(std::move(node));
    return id;
  }

  std::vector<Parent> resolve(const ArgumentGroup& group, const NodeId& goal) {
    std::vector<Parent> out;
    for (const auto& child : group.children) {
      if (child.is_group()) {
        auto sub = resolve(*child.group, goal);
        out.push_back({add_intermediate(std::move(sub), *child.group, goal),
                       child.weight});
      } else {
        out.push_back({*child.ref, child.weight});
      }
    }
    return out;
  }

  void add_goal(const NodeId& goal) {
    ArgumentGroup fallback;
    const ArgumentGroup* group = &fallback;
    if (const auto* spec = model_.spec_for(goal)) {
      group = &spec->group;
    } else {
      for (auto& id : support_children(model_, goal)) {
        fallback.children.push_back({std::move(id), nullptr, 1.0});
      }
    }

    const auto contexts = model_.contexts_of(goal);
    std::vector<Parent> parents;
    Combinator combinator;
    if (contexts.empty()) {
      parents = resolve(*group, goal);
      combinator = combinator_for(*group, weights_of(parents));
    } else {
      if (group->kind == ArgumentKind::Alternative && group->children.size() > 1) {
        auto alternatives = resolve(*group, goal);
        parents.push_back({add_intermediate(std::move(alternatives), *group, goal),
                           1.0});
      } else {
        parents = resolve(*group, goal);
      }
      for (const auto& c : contexts) {
        parents.push_back({c, model_.context_weight(c)});
      }
      const bool explicit_leak = group->kind == ArgumentKind::Complementary &&
                                 group->leak_override.has_value();
      combinator = explicit_leak
                       ? make_noisy_and(weights_of(parents), *group->leak_override)
                       : make_noisy_and(weights_of(parents));
    }

    ConfidenceNode node{goal, Origin::Derived, goal, {}, std::move(combinator)};
    for (auto& p : parents) node.parents.push_back(std::move(p.id));
    out_.push_back(std::move(node));
  }

  const ArgumentModel& model_;
  std::vector<ConfidenceNode> out_;
  std::set<NodeId> used_;
};

}  // namespace

ConfidenceNetwork transform(const ArgumentModel& model) {
  return Transformer(model).run();
}

}  // namespace argus

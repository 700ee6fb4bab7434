#include "argus/argument_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace argus {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Goal: return "goal";
    case NodeKind::Strategy: return "strategy";
    case NodeKind::Solution: return "solution";
    case NodeKind::Context: return "context";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  return kind == EdgeKind::SupportedBy ? "supported_by" : "in_context_of";
}

std::string_view to_string(ArgumentKind kind) {
  return kind == ArgumentKind::Alternative ? "alternative" : "complementary";
}

bool ArgumentChild::operator==(const ArgumentChild& other) const {
  if (ref != other.ref || weight != other.weight) return false;
  if (is_group() != other.is_group()) return false;
  return !is_group() || *group == *other.group;
}

bool is_valid_node_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
  });
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

// Strategies contribute their own supporting children; first occurrence wins.
void flatten_support(std::size_t node, const std::vector<ArgumentNode>& nodes,
                     const Adjacency& supported_by, std::vector<char>& seen,
                     std::vector<std::size_t>& out) {
  for (std::size_t c : supported_by[node]) {
    if (nodes[c].kind == NodeKind::Strategy) {
      flatten_support(c, nodes, supported_by, seen, out);
    } else if (!seen[c]) {
      seen[c] = 1;
      out.push_back(c);
    }
  }
}

std::vector<std::size_t> flat_support(std::size_t node,
                                      const std::vector<ArgumentNode>& nodes,
                                      const Adjacency& supported_by) {
  std::vector<char> seen(nodes.size(), 0);
  std::vector<std::size_t> out;
  flatten_support(node, nodes, supported_by, seen, out);
  return out;
}

class Validator {
 public:
  explicit Validator(const ModelInput& in) : in_(in) {}

  void run() {
    index_nodes();
    index_edges();
    if (!find_cycles()) {
      acyclic_ = true;
      check_root();
      lift_contexts();
      check_specs();
    }
    check_values();
  }

  std::vector<Violation> violations;
  std::map<NodeId, std::size_t, std::less<>> index;
  Adjacency supported_by;
  std::vector<std::size_t> context_owner;
  std::size_t root = 0;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void add(ErrorCode code, std::string message, std::string path) {
    violations.push_back({code, std::move(message), std::move(path)});
  }

  const NodeKind& kind(std::size_t i) const { return in_.nodes[i].kind; }
  const NodeId& id(std::size_t i) const { return in_.nodes[i].id; }

  void index_nodes() {
    const auto n = in_.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& node = in_.nodes[i];
      const std::string path = "nodes[" + std::to_string(i) + "].id";
      if (!is_valid_node_id(node.id)) {
        add(ErrorCode::InvalidId,
            "id '" + node.id +
                "' must be a non-empty token of letters, digits, '_', '-', '.'",
            path);
      } else if (node.id.starts_with(kIntermediatePrefix)) {
        add(ErrorCode::InvalidId,
            "id '" + node.id + "' uses the reserved prefix 'I_'", path);
      }
      if (!index.emplace(node.id, i).second) {
        add(ErrorCode::DuplicateId, "id '" + node.id + "' is declared twice",
            path);
      }
    }
    supported_by.assign(n, {});
    supporters_.assign(n, {});
    context_parents_.assign(n, {});
  }

  void index_edges() {
    std::set<std::tuple<EdgeKind, std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < in_.edges.size(); ++e) {
      const auto& edge = in_.edges[e];
      const std::string path = "edges[" + std::to_string(e) + "]";
      auto p = index.find(edge.parent);
      auto c = index.find(edge.child);
      if (p == index.end()) {
        add(ErrorCode::UnknownReference,
            "undeclared node '" + edge.parent + "'", path + ".parent");
      }
      if (c == index.end()) {
        add(ErrorCode::UnknownReference, "undeclared node '" + edge.child + "'",
            path + ".child");
      }
      if (p == index.end() || c == index.end()) continue;
      const std::size_t pi = p->second, ci = c->second;
      const NodeKind pk = kind(pi), ck = kind(ci);
      const bool parent_ok = pk == NodeKind::Goal || pk == NodeKind::Strategy;
      if (edge.kind == EdgeKind::SupportedBy) {
        if (!parent_ok || ck == NodeKind::Context) {
          add(ErrorCode::IllegalEdge,
              std::string(to_string(pk)) + " '" + edge.parent +
                  "' cannot be supported by " + std::string(to_string(ck)) +
                  " '" + edge.child + "'",
              path);
          continue;
        }
      } else if (!parent_ok || ck != NodeKind::Context) {
        add(ErrorCode::IllegalEdge,
            "in_context_of requires a goal or strategy parent and a context "
            "child, got " +
                std::string(to_string(pk)) + " '" + edge.parent + "' and " +
                std::string(to_string(ck)) + " '" + edge.child + "'",
            path);
        continue;
      }
      if (!seen.emplace(edge.kind, pi, ci).second) {
        add(ErrorCode::IllegalEdge, "duplicate edge", path);
        continue;
      }
      if (edge.kind == EdgeKind::SupportedBy) {
        supported_by[pi].push_back(ci);
        supporters_[ci].push_back(pi);
      } else {
        context_parents_[ci].push_back(pi);
      }
    }
  }

  // Returns true when at least one cycle was reported.
  bool find_cycles() {
    enum : char { White, Grey, Black };
    std::vector<char> color(in_.nodes.size(), White);
    std::vector<std::size_t> stack;
    bool found = false;
    std::function<void(std::size_t)> visit = [&](std::size_t u) {
      color[u] = Grey;
      stack.push_back(u);
      for (std::size_t v : supported_by[u]) {
        if (color[v] == Grey) {
          auto start = std::find(stack.begin(), stack.end(), v);
          std::string path;
          for (auto it = start; it != stack.end(); ++it) path += id(*it) + "->";
          path += id(v);
          add(ErrorCode::CycleDetected, "supported_by cycle " + path, "edges");
          found = true;
        } else if (color[v] == White) {
          visit(v);
        }
      }
      stack.pop_back();
      color[u] = Black;
    };
    for (std::size_t i = 0; i < in_.nodes.size(); ++i) {
      if (color[i] == White) visit(i);
    }
    return found;
  }

  void check_root() {
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < in_.nodes.size(); ++i) {
      if (kind(i) != NodeKind::Context && supporters_[i].empty()) {
        roots.push_back(i);
      }
    }
    if (roots.empty()) {
      add(ErrorCode::MultipleRoots, "model has no root goal", "nodes");
    } else if (roots.size() > 1) {
      std::string names;
      for (std::size_t r : roots) names += (names.empty() ? "" : ", ") + id(r);
      add(ErrorCode::MultipleRoots,
          "model must have exactly one root goal, found " +
              std::to_string(roots.size()) + ": " + names,
          "nodes");
    } else if (kind(roots.front()) != NodeKind::Goal) {
      add(ErrorCode::MultipleRoots,
          "root '" + id(roots.front()) + "' is a " +
              std::string(to_string(kind(roots.front()))) +
              "; the root must be a goal",
          "nodes");
    } else {
      root = roots.front();
    }
  }

  void goals_above(std::size_t node, std::set<std::size_t>& out) const {
    if (kind(node) == NodeKind::Goal) {
      out.insert(node);
      return;
    }
    for (std::size_t p : supporters_[node]) goals_above(p, out);
  }

  void lift_contexts() {
    context_owner.assign(in_.nodes.size(), kNone);
    for (std::size_t i = 0; i < in_.nodes.size(); ++i) {
      if (kind(i) != NodeKind::Context) continue;
      std::set<std::size_t> goals;
      for (std::size_t p : context_parents_[i]) goals_above(p, goals);
      if (goals.empty()) {
        add(ErrorCode::IllegalEdge,
            "context '" + id(i) + "' is not attached to any goal", "edges");
      } else if (goals.size() > 1) {
        add(ErrorCode::IllegalEdge,
            "context '" + id(i) + "' contextualizes more than one goal", "edges");
      } else {
        const std::size_t g = *goals.begin();
        context_owner[i] = g;
        if (flat_support(g, in_.nodes, supported_by).empty()) {
          add(ErrorCode::IllegalEdge,
              "context '" + id(i) + "' is attached to undeveloped goal '" +
                  id(g) + "'",
              "edges");
        }
      }
    }
  }

  void check_group(const ArgumentGroup& group, const std::string& path,
                   std::size_t owner, const std::vector<std::size_t>& support,
                   std::map<std::size_t, int>& counts) {
    if (group.children.empty()) {
      add(ErrorCode::InvalidArgumentSpec, "argument has no children",
          path + ".children");
    }
    if (group.leak_override && !in_unit_interval(*group.leak_override)) {
      add(ErrorCode::ValueOutOfRange, "leak must lie in [0,1]", path + ".leak");
    }
    for (std::size_t j = 0; j < group.children.size(); ++j) {
      const auto& child = group.children[j];
      const std::string cpath = path + ".children[" + std::to_string(j) + "]";
      if (!in_unit_interval(child.weight)) {
        add(ErrorCode::ValueOutOfRange, "weight must lie in [0,1]",
            cpath + ".weight");
      }
      if (child.ref.has_value() == child.is_group()) {
        add(ErrorCode::InvalidArgumentSpec,
            "child must have exactly one of 'ref' or 'group'", cpath);
        continue;
      }
      if (child.is_group()) {
        check_group(*child.group, cpath + ".group", owner, support, counts);
        continue;
      }
      auto it = index.find(*child.ref);
      if (it == index.end()) {
        add(ErrorCode::UnknownReference, "undeclared node '" + *child.ref + "'",
            cpath + ".ref");
      } else if (std::find(support.begin(), support.end(), it->second) ==
                 support.end()) {
        add(ErrorCode::InvalidArgumentSpec,
            "'" + *child.ref + "' does not directly support goal '" +
                id(owner) + "'",
            cpath + ".ref");
      } else {
        ++counts[it->second];
      }
    }
  }

  void check_specs() {
    std::set<std::size_t> owners;
    for (std::size_t s = 0; s < in_.specs.size(); ++s) {
      const auto& spec = in_.specs[s];
      const std::string path = "arguments[" + std::to_string(s) + "]";
      auto it = index.find(spec.owner);
      if (it == index.end()) {
        add(ErrorCode::UnknownReference, "undeclared goal '" + spec.owner + "'",
            path + ".goal");
        continue;
      }
      const std::size_t g = it->second;
      if (kind(g) != NodeKind::Goal) {
        add(ErrorCode::InvalidArgumentSpec,
            "'" + spec.owner + "' is not a goal", path + ".goal");
        continue;
      }
      if (!owners.insert(g).second) {
        add(ErrorCode::InvalidArgumentSpec,
            "goal '" + spec.owner + "' has more than one argument", path + ".goal");
        continue;
      }
      const auto support = flat_support(g, in_.nodes, supported_by);
      std::map<std::size_t, int> counts;
      check_group(spec.group, path, g, support, counts);
      for (std::size_t c : support) {
        const int n = counts[c];
        if (n == 0) {
          add(ErrorCode::InvalidArgumentSpec,
              "supporting node '" + id(c) + "' is missing from the argument",
              path + ".children");
        } else if (n > 1) {
          add(ErrorCode::InvalidArgumentSpec,
              "supporting node '" + id(c) + "' appears " + std::to_string(n) +
                  " times",
              path + ".children");
        }
      }
    }
  }

  bool is_leaf(std::size_t i) const {
    switch (kind(i)) {
      case NodeKind::Solution:
      case NodeKind::Context: return true;
      case NodeKind::Strategy: return false;
      case NodeKind::Goal:
        return flat_support(i, in_.nodes, supported_by).empty();
    }
    return false;
  }

  void check_values() {
    for (const auto& [node, g] : in_.confidences) {
      const std::string path = "confidence." + node;
      auto it = index.find(node);
      if (it == index.end()) {
        add(ErrorCode::UnknownReference, "undeclared node '" + node + "'", path);
        continue;
      }
      if (!in_unit_interval(g)) {
        add(ErrorCode::ValueOutOfRange, "confidence must lie in [0,1]", path);
      }
      if (acyclic_ && !is_leaf(it->second)) {
        add(ErrorCode::UnexpectedValue,
            "'" + node + "' is not a leaf; its confidence is computed", path);
      }
    }
    if (acyclic_) {
      for (std::size_t i = 0; i < in_.nodes.size(); ++i) {
        if (is_leaf(i) && !in_.confidences.contains(id(i))) {
          add(ErrorCode::MissingConfidence,
              "leaf '" + id(i) + "' has no confidence", "confidence." + id(i));
        }
      }
    }
    for (const auto& [node, w] : in_.context_weights) {
      const std::string path = "context_weights." + node;
      auto it = index.find(node);
      if (it == index.end()) {
        add(ErrorCode::UnknownReference, "undeclared node '" + node + "'", path);
        continue;
      }
      if (!in_unit_interval(w)) {
        add(ErrorCode::ValueOutOfRange, "context weight must lie in [0,1]", path);
      }
      if (kind(it->second) != NodeKind::Context) {
        add(ErrorCode::UnexpectedValue, "'" + node + "' is not a context", path);
      }
    }
  }

  const ModelInput& in_;
  bool acyclic_ = false;
  Adjacency supporters_, context_parents_;
};

}  // namespace

ArgumentModel build_model(ModelInput input) {
  Validator v(input);
  v.run();
  if (!v.violations.empty()) throw ValidationError(std::move(v.violations));

  ArgumentModel m;
  m.root_ = input.nodes[v.root].id;
  m.nodes_ = std::move(input.nodes);
  m.edges_ = std::move(input.edges);
  m.specs_ = std::move(input.specs);
  m.confidences_ = std::move(input.confidences);
  m.context_weights_ = std::move(input.context_weights);
  m.index_ = std::move(v.index);
  m.supported_by_ = std::move(v.supported_by);
  return m;
}

const ArgumentNode* ArgumentModel::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const ArgumentSpec* ArgumentModel::spec_for(std::string_view goal) const {
  for (const auto& s : specs_) {
    if (s.owner == goal) return &s;
  }
  return nullptr;
}

std::vector<NodeId> ArgumentModel::contexts_of(std::string_view goal) const {
  auto it = index_.find(goal);
  if (it == index_.end() || nodes_[it->second].kind != NodeKind::Goal) return {};
  // Walk the goal and every strategy below it, then report contexts in edge
  // declaration order.
  std::vector<char> owned(nodes_.size(), 0);
  std::function<void(std::size_t)> mark = [&](std::size_t n) {
    owned[n] = 1;
    for (std::size_t c : supported_by_[n]) {
      if (nodes_[c].kind == NodeKind::Strategy && !owned[c]) mark(c);
    }
  };
  mark(it->second);
  std::vector<NodeId> out;
  for (const auto& e : edges_) {
    if (e.kind != EdgeKind::InContextOf) continue;
    if (owned[index_.at(e.parent)] &&
        std::find(out.begin(), out.end(), e.child) == out.end()) {
      out.push_back(e.child);
    }
  }
  return out;
}

double ArgumentModel::context_weight(std::string_view context) const {
  auto it = context_weights_.find(NodeId(context));
  return it == context_weights_.end() ? 1.0 : it->second;
}

std::vector<NodeId> support_children(const ArgumentModel& model,
                                     std::string_view goal) {
  auto it = model.index_.find(goal);
  if (it == model.index_.end()) {
    throw Error(ErrorCode::UnknownReference,
                "undeclared node '" + std::string(goal) + "'");
  }
  if (model.nodes_[it->second].kind != NodeKind::Goal) {
    throw Error(ErrorCode::UnknownReference,
                "'" + std::string(goal) + "' is not a goal");
  }
  std::vector<NodeId> out;
  for (std::size_t c : flat_support(it->second, model.nodes_, model.supported_by_)) {
    out.push_back(model.nodes_[c].id);
  }
  return out;
}

std::vector<NodeId> leaves(const ArgumentModel& model) {
  std::vector<NodeId> out;
  for (const auto& node : model.nodes()) {
    const bool leaf =
        node.kind == NodeKind::Solution || node.kind == NodeKind::Context ||
        (node.kind == NodeKind::Goal && support_children(model, node.id).empty());
    if (leaf) out.push_back(node.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace argus

#include "argus/propagation.hpp"

#include <charconv>

#include "argus/error.hpp"

namespace argus {

double PropagationResult::at(std::string_view id) const {
  auto it = values.find(NodeId(id));
  if (it == values.end()) {
    throw Error(ErrorCode::UnknownTarget, "no node '" + std::string(id) + "'");
  }
  return it->second;
}

namespace {

void check_unit(double value, const std::string& path) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::ValueOutOfRange, "value must lie in [0,1]", path);
  }
}

}  // namespace

void add_override(Overrides& out, std::string_view key, double value) {
  const std::string path(key);
  check_unit(value, path);
  auto bad = [&]() -> Error {
    return Error(ErrorCode::UnknownVariable,
                 "malformed override key (expected ID, w:NODE:IDX or v:NODE)",
                 path);
  };
  if (key.starts_with("w:")) {
    const auto rest = key.substr(2);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) throw bad();
    const auto digits = rest.substr(colon + 1);
    std::size_t index = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size() ||
        digits.empty()) {
      throw bad();
    }
    out.parameters.push_back({ParameterOverride::Kind::Weight,
                              NodeId(rest.substr(0, colon)), index, value});
  } else if (key.starts_with("v:")) {
    if (key.size() == 2) throw bad();
    out.parameters.push_back(
        {ParameterOverride::Kind::Leak, NodeId(key.substr(2)), 0, value});
  } else {
    if (key.empty() || key.find(':') != std::string_view::npos) throw bad();
    out.leaves[NodeId(key)] = value;
  }
}

Assessment baseline_assessment(const ArgumentModel& model) {
  return model.leaf_confidences();
}

Assessment patched(const Assessment& base, const Assessment& patch) {
  Assessment out = base;
  for (const auto& [id, g] : patch) {
    auto it = out.find(id);
    if (it == out.end()) {
      throw Error(ErrorCode::UnknownLeaf, "'" + id + "' is not a leaf", id);
    }
    check_unit(g, id);
    it->second = g;
  }
  return out;
}

namespace detail {

std::map<std::size_t, Combinator> apply_parameters(
    const ConfidenceNetwork& network,
    std::span<const ParameterOverride> parameters) {
  std::map<std::size_t, Combinator> out;
  for (const auto& p : parameters) {
    const std::string key =
        p.kind == ParameterOverride::Kind::Weight
            ? "w:" + p.node + ":" + std::to_string(p.index)
            : "v:" + p.node;
    const auto index = network.index_of(p.node);
    if (!index || network.node(*index).is_leaf()) {
      throw Error(ErrorCode::UnknownVariable,
                  "'" + p.node + "' is not a derived node", key);
    }
    check_unit(p.value, key);
    auto it = out.find(*index);
    const Combinator& current =
        it != out.end() ? it->second : *network.node(*index).combinator;
    Combinator next;
    if (p.kind == ParameterOverride::Kind::Weight) {
      if (p.index >= arity(current)) {
        throw Error(ErrorCode::UnknownVariable,
                    "'" + p.node + "' has " + std::to_string(arity(current)) +
                        " weights",
                    key);
      }
      next = with_weight(current, p.index, p.value);
    } else {
      const auto* a = std::get_if<NoisyAnd>(&current);
      if (a == nullptr || a->leak_is_default) {
        throw Error(ErrorCode::UnknownVariable,
                    "'" + p.node + "' has no explicit leak", key);
      }
      next = with_leak(current, p.value);
    }
    out.insert_or_assign(*index, std::move(next));
  }
  return out;
}

std::vector<double> leaf_values(const ConfidenceNetwork& network,
                                const Assessment& assessment) {
  std::vector<double> values(network.size(), 0.0);
  std::string missing;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const auto& node = network.node(i);
    if (!node.is_leaf()) continue;
    auto it = assessment.find(node.id);
    if (it == assessment.end()) {
      missing += (missing.empty() ? "" : ", ") + node.id;
      continue;
    }
    check_unit(it->second, node.id);
    values[i] = it->second;
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::IncompleteAssessment,
                "no confidence for leaves: " + missing);
  }
  for (const auto& [id, g] : assessment) {
    const auto* node = network.find(id);
    if (node == nullptr || !node->is_leaf()) {
      throw Error(ErrorCode::UnknownLeaf, "'" + id + "' is not a network leaf",
                  id);
    }
  }
  return values;
}

std::vector<const Combinator*> combinator_table(
    const ConfidenceNetwork& network) {
  std::vector<const Combinator*> table(network.size(), nullptr);
  for (std::size_t i = 0; i < network.size(); ++i) {
    const auto& c = network.node(i).combinator;
    if (c) table[i] = &*c;
  }
  return table;
}

void propagate_values(const ConfidenceNetwork& network,
                      std::span<const Combinator* const> combinators,
                      std::span<double> values, std::vector<double>& scratch) {
  for (std::size_t i = 0; i < network.size(); ++i) {
    if (combinators[i] == nullptr) continue;
    const auto parents = network.parent_indices(i);
    scratch.resize(parents.size());
    for (std::size_t k = 0; k < parents.size(); ++k) {
      scratch[k] = values[parents[k]];
    }
    values[i] = evaluate_unchecked(*combinators[i], scratch.data());
  }
}

PropagationResult make_result(const ConfidenceNetwork& network,
                              std::span<const double> values) {
  PropagationResult result;
  for (std::size_t i = 0; i < network.size(); ++i) {
    result.values.emplace(network.node(i).id, values[i]);
  }
  result.root = network.root();
  result.root_confidence = values[network.root_index()];
  return result;
}

}  // namespace detail

PropagationResult propagate(const ConfidenceNetwork& network,
                            const Assessment& assessment) {
  return propagate(network, assessment, {});
}

PropagationResult propagate(const ConfidenceNetwork& network,
                            const Assessment& assessment,
                            std::span<const ParameterOverride> parameters) {
  auto values = detail::leaf_values(network, assessment);
  const auto replaced = detail::apply_parameters(network, parameters);
  auto table = detail::combinator_table(network);
  for (const auto& [i, c] : replaced) table[i] = &c;
  std::vector<double> scratch;
  detail::propagate_values(network, table, values, scratch);
  return detail::make_result(network, values);
}

std::vector<PropagationResult> propagate_batch(
    const ConfidenceNetwork& network, std::span<const Assessment> assessments) {
  const auto count = static_cast<std::ptrdiff_t>(assessments.size());
  // The first failing assessment is the one reported.
  std::vector<std::vector<double>> values;
  values.reserve(assessments.size());
  for (const auto& a : assessments) {
    values.push_back(detail::leaf_values(network, a));
  }
  const auto table = detail::combinator_table(network);
  std::vector<PropagationResult> results(assessments.size());
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      detail::propagate_values(network, table, values[k], scratch);
      results[k] = detail::make_result(network, values[k]);
    }
  }
  return results;
}

}  // namespace argus

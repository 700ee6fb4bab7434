#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argus/argument_model.hpp"
#include "argus/confidence_network.hpp"

namespace argus {

/// Confidence g in [0,1] for every leaf of a network.
using Assessment = std::map<NodeId, double>;

struct PropagationResult {
  std::map<NodeId, double> values;
  NodeId root;
  double root_confidence = 0.0;

  double at(std::string_view id) const;
  bool operator==(const PropagationResult&) const = default;
};

/// A transient change to an inference parameter: weight `index` of `node`
/// or the explicit leak of a noisy-AND node.
struct ParameterOverride {
  enum class Kind { Weight, Leak };
  Kind kind = Kind::Weight;
  NodeId node;
  std::size_t index = 0;
  double value = 0.0;

  bool operator==(const ParameterOverride&) const = default;
};

/// Overrides keyed the way the service and CLI accept them: a bare id sets a
/// leaf confidence, `w:NODE:IDX` a weight, `v:NODE` an explicit leak.
struct Overrides {
  Assessment leaves;
  std::vector<ParameterOverride> parameters;
};

/// Parses one `key=value` pair into `out`. Throws Error(UnknownVariable) on a
/// malformed key and Error(ValueOutOfRange) on a value outside [0,1].
void add_override(Overrides& out, std::string_view key, double value);

/// The leaf confidences recorded in the model.
Assessment baseline_assessment(const ArgumentModel& model);

/// `base` with `patch` entries replaced. Throws UnknownLeaf for ids that are
/// not in `base`.
Assessment patched(const Assessment& base, const Assessment& patch);

/// Evaluates every node in topological order.
PropagationResult propagate(const ConfidenceNetwork& network,
                            const Assessment& assessment);

PropagationResult propagate(const ConfidenceNetwork& network,
                            const Assessment& assessment,
                            std::span<const ParameterOverride> parameters);

/// Evaluates many assessments over one network; assessments are distributed
/// over OpenMP threads. Results are identical to calling propagate() on each.
std::vector<PropagationResult> propagate_batch(
    const ConfidenceNetwork& network, std::span<const Assessment> assessments);

namespace detail {

/// Replacement combinators, keyed by node index, for the nodes touched by
/// `parameters`. Throws UnknownVariable for unresolvable overrides.
std::map<std::size_t, Combinator> apply_parameters(
    const ConfidenceNetwork& network,
    std::span<const ParameterOverride> parameters);

/// Node-indexed value vector holding the assessment on leaves. Validates
/// totality, unknown ids and range.
std::vector<double> leaf_values(const ConfidenceNetwork& network,
                                const Assessment& assessment);

/// Fills non-leaf entries of `values` in topological order. `combinators[i]`
/// is used for node i (leaves ignored). `scratch` is reused between nodes.
void propagate_values(const ConfidenceNetwork& network,
                      std::span<const Combinator* const> combinators,
                      std::span<double> values, std::vector<double>& scratch);

std::vector<const Combinator*> combinator_table(const ConfidenceNetwork& network);

PropagationResult make_result(const ConfidenceNetwork& network,
                              std::span<const double> values);

}  // namespace detail

}  // namespace argus

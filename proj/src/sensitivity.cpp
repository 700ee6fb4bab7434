#include "argus/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "argus/error.hpp"
#include "tornado_kernel.hpp"

namespace argus {

std::string SensitivityVariable::key() const {
  switch (kind) {
    case Kind::LeafConfidence: return node;
    case Kind::Weight: return "w:" + node + ":" + std::to_string(index);
    case Kind::Leak: return "v:" + node;
  }
  return node;
}

Raises TornadoEntry::raises() const {
  if (value_at_max > value_at_min) return Raises::AtMax;
  if (value_at_min > value_at_max) return Raises::AtMin;
  return Raises::Neither;
}

std::vector<SensitivityVariable> sensitivity_variables(
    const ConfidenceNetwork& network) {
  using Kind = SensitivityVariable::Kind;
  std::vector<SensitivityVariable> out;
  for (const auto& id : network.leaf_ids()) {
    out.push_back({Kind::LeafConfidence, id, 0, "g(" + id + ")"});
  }
  for (const auto& node : network.nodes()) {
    if (node.is_leaf()) continue;
    for (std::size_t k = 0; k < node.parents.size(); ++k) {
      out.push_back({Kind::Weight, node.id, k,
                     "w(" + node.id + "," + node.parents[k] + ")"});
    }
  }
  for (const auto& node : network.nodes()) {
    if (node.is_leaf()) continue;
    const auto* a = std::get_if<NoisyAnd>(&*node.combinator);
    if (a != nullptr && !a->leak_is_default) {
      out.push_back({Kind::Leak, node.id, 0, "v(" + node.id + ")"});
    }
  }
  return out;
}

std::vector<SensitivityVariable> rank_weak_points(const TornadoReport& report,
                                                  std::size_t top_k) {
  const std::size_t k = std::min(top_k, report.entries.size());
  std::vector<SensitivityVariable> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(report.entries[i].variable);
  return out;
}

namespace detail {

TornadoSetup prepare_tornado(const ConfidenceNetwork& network,
                             const Assessment& assessment,
                             std::string_view target,
                             std::span<const std::string> variables) {
  TornadoSetup setup;
  setup.network = &network;
  const auto t = network.index_of(target);
  if (!t) {
    throw Error(ErrorCode::UnknownTarget,
                "no node '" + std::string(target) + "' in the network");
  }
  setup.target = *t;
  setup.leaf_values = leaf_values(network, assessment);
  setup.table = combinator_table(network);

  auto all = sensitivity_variables(network);
  if (variables.empty()) {
    setup.variables = std::move(all);
  } else {
    std::set<std::string> wanted;
    for (const auto& key : variables) {
      const bool known = std::any_of(all.begin(), all.end(), [&](const auto& v) {
        return v.key() == key;
      });
      if (!known) {
        throw Error(ErrorCode::UnknownVariable,
                    "no sensitivity variable '" + key + "'", key);
      }
      wanted.insert(key);
    }
    for (auto& v : all) {
      if (wanted.contains(v.key())) setup.variables.push_back(std::move(v));
    }
  }
  for (const auto& v : setup.variables) {
    setup.leaf_index.push_back(network.index_of(v.node).value());
  }

  std::vector<double> values = setup.leaf_values;
  std::vector<double> scratch;
  propagate_values(network, setup.table, values, scratch);
  setup.baseline_target = values[setup.target];
  return setup;
}

double excursion(const TornadoSetup& setup, std::size_t k, double x,
                 std::vector<double>& values, std::vector<double>& scratch) {
  using Kind = SensitivityVariable::Kind;
  const auto& variable = setup.variables[k];
  const std::size_t node = setup.leaf_index[k];
  values = setup.leaf_values;
  if (variable.kind == Kind::LeafConfidence) {
    values[node] = x;
    propagate_values(*setup.network, setup.table, values, scratch);
    return values[setup.target];
  }
  const Combinator& current = *setup.table[node];
  const Combinator patched = variable.kind == Kind::Weight
                                 ? with_weight(current, variable.index, x)
                                 : with_leak(current, x);
  std::vector<const Combinator*> table = setup.table;
  table[node] = &patched;
  propagate_values(*setup.network, table, values, scratch);
  return values[setup.target];
}

TornadoEntry make_entry(const TornadoSetup& setup, std::size_t k,
                        double at_min, double at_max) {
  return {setup.variables[k], setup.baseline_target, at_min, at_max,
          std::fabs(at_max - at_min)};
}

TornadoReport finish_tornado(const TornadoSetup& setup,
                             const Assessment& assessment,
                             std::vector<TornadoEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const TornadoEntry& a, const TornadoEntry& b) {
              if (a.width != b.width) return a.width > b.width;
              return a.variable.label < b.variable.label;
            });
  TornadoReport report;
  report.target = setup.network->node(setup.target).id;
  report.baseline = assessment;
  report.baseline_target = setup.baseline_target;
  report.entries = std::move(entries);
  report.propagations = 1 + 2 * setup.variables.size();
  return report;
}

}  // namespace detail

TornadoReport tornado(const ConfidenceNetwork& network,
                      const Assessment& assessment, std::string_view target,
                      std::span<const std::string> variables) {
  const auto setup =
      detail::prepare_tornado(network, assessment, target, variables);
  const auto count = static_cast<std::ptrdiff_t>(setup.variables.size());
  std::vector<TornadoEntry> entries(setup.variables.size());
  // Exceptions must not escape an OpenMP region; excursions on a prepared
  // setup only throw on internal inconsistencies, which are rethrown here.
  std::exception_ptr failure;
#pragma omp parallel
  {
    std::vector<double> values, scratch;
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      try {
        const double lo =
            detail::excursion(setup, k, kExcursionMin, values, scratch);
        const double hi =
            detail::excursion(setup, k, kExcursionMax, values, scratch);
        entries[k] = detail::make_entry(setup, k, lo, hi);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return detail::finish_tornado(setup, assessment, std::move(entries));
}

}  // namespace argus

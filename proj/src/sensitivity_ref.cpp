#include "argus/sensitivity.hpp"
#include "tornado_kernel.hpp"

namespace argus {

TornadoReport tornado_ref(const ConfidenceNetwork& network,
                          const Assessment& assessment, std::string_view target,
                          std::span<const std::string> variables) {
  const auto setup =
      detail::prepare_tornado(network, assessment, target, variables);
  std::vector<TornadoEntry> entries;
  entries.reserve(setup.variables.size());
  std::vector<double> values, scratch;
  for (std::size_t k = 0; k < setup.variables.size(); ++k) {
    const double lo = detail::excursion(setup, k, kExcursionMin, values, scratch);
    const double hi = detail::excursion(setup, k, kExcursionMax, values, scratch);
    entries.push_back(detail::make_entry(setup, k, lo, hi));
  }
  return detail::finish_tornado(setup, assessment, std::move(entries));
}

}  // namespace argus

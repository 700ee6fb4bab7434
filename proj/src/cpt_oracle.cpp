#include "argus/cpt_oracle.hpp"

#include <string>

#include "argus/error.hpp"

namespace argus {

double table_entry(const Combinator& c, std::uint32_t true_parents) {
  if (true_parents == 0) return 0.0;
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Simple>) {
          return k.p;
        } else if constexpr (std::is_same_v<K, NoisyOr>) {
          // 1 - prod over true parents of (1 - p_i)
          double miss = 1.0;
          for (std::size_t i = 0; i < k.weights.size(); ++i) {
            if (true_parents >> i & 1u) miss *= 1.0 - k.weights[i];
          }
          return 1.0 - miss;
        } else {
          // v * prod over false parents of (1 - p_i)
          double keep = k.leak;
          for (std::size_t i = 0; i < k.weights.size(); ++i) {
            if (!(true_parents >> i & 1u)) keep *= 1.0 - k.weights[i];
          }
          return keep;
        }
      },
      c);
}

double cpt_oracle(const Combinator& c, std::span<const double> confidences) {
  const std::size_t n = arity(c);
  if (n > kMaxOracleParents) {
    throw Error(ErrorCode::TooManyParents,
                std::to_string(n) + " parents exceeds the enumeration limit of " +
                    std::to_string(kMaxOracleParents));
  }
  if (confidences.size() != n) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(n) + " weights for " +
                    std::to_string(confidences.size()) + " confidences");
  }
  double total = 0.0;
  const std::uint32_t assignments = 1u << n;
  for (std::uint32_t s = 0; s < assignments; ++s) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prob *= (s >> i & 1u) ? confidences[i] : 1.0 - confidences[i];
    }
    total += prob * table_entry(c, s);
  }
  return total;
}

}  // namespace argus

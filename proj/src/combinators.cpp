#include "argus/combinators.hpp"

#include <numeric>
#include <string>

#include "argus/error.hpp"

namespace argus {

namespace {

constexpr double kClampTolerance = 1e-12;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::ValueOutOfRange,
                std::string(what) + " " + std::to_string(x) +
                    " lies outside [0,1]");
  }
}

void check_lists(std::span<const double> weights,
                 std::span<const double> confidences) {
  if (weights.empty()) {
    throw Error(ErrorCode::EmptyWeights, "combinator needs at least one parent");
  }
  if (weights.size() != confidences.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(weights.size()) + " weights for " +
                    std::to_string(confidences.size()) + " confidences");
  }
  for (double w : weights) check_unit(w, "weight");
  for (double g : confidences) check_unit(g, "confidence");
}

}  // namespace

std::string_view combinator_name(const Combinator& c) {
  switch (c.index()) {
    case 0: return "simple";
    case 1: return "noisy_or";
    default: return "noisy_and";
  }
}

std::size_t arity(const Combinator& c) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, Simple>) {
          return 1;
        } else {
          return k.weights.size();
        }
      },
      c);
}

double weight(const Combinator& c, std::size_t index) {
  if (const auto* s = std::get_if<Simple>(&c)) return s->p;
  const auto& w = std::holds_alternative<NoisyOr>(c)
                      ? std::get<NoisyOr>(c).weights
                      : std::get<NoisyAnd>(c).weights;
  return w.at(index);
}

Combinator with_weight(const Combinator& c, std::size_t index, double value) {
  check_unit(value, "weight");
  if (index >= arity(c)) {
    throw Error(ErrorCode::UnknownVariable,
                "weight index " + std::to_string(index) + " out of range");
  }
  Combinator out = c;
  std::visit(
      [&](auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Simple>) {
          k.p = value;
        } else {
          k.weights[index] = value;
          if constexpr (std::is_same_v<K, NoisyAnd>) {
            if (k.leak_is_default) k.leak = default_leak(k.weights);
          }
        }
      },
      out);
  return out;
}

Combinator with_leak(const Combinator& c, double leak) {
  check_unit(leak, "leak");
  const auto* a = std::get_if<NoisyAnd>(&c);
  if (a == nullptr) {
    throw Error(ErrorCode::UnknownVariable, "only noisy_and nodes have a leak");
  }
  return make_noisy_and(a->weights, leak);
}

double default_leak(std::span<const double> weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::EmptyWeights, "default leak of an empty weight list");
  }
  for (double w : weights) check_unit(w, "weight");
  return std::accumulate(weights.begin(), weights.end(), 0.0) /
         static_cast<double>(weights.size());
}

NoisyAnd make_noisy_and(std::vector<double> weights) {
  const double v = default_leak(weights);
  return NoisyAnd{std::move(weights), v, true};
}

NoisyAnd make_noisy_and(std::vector<double> weights, double leak) {
  check_unit(leak, "leak");
  return NoisyAnd{std::move(weights), leak, false};
}

double eval_simple(double p, double g) {
  check_unit(p, "weight");
  check_unit(g, "confidence");
  return p * g;
}

double eval_noisy_or(std::span<const double> weights,
                     std::span<const double> confidences) {
  check_lists(weights, confidences);
  return detail::noisy_or_unchecked(weights.data(), confidences.data(),
                                    weights.size());
}

double eval_noisy_and(std::span<const double> weights, double leak,
                      std::span<const double> confidences) {
  check_lists(weights, confidences);
  check_unit(leak, "leak");
  return detail::noisy_and_unchecked(weights.data(), leak, confidences.data(),
                                     weights.size());
}

double evaluate(const Combinator& c, std::span<const double> confidences) {
  if (confidences.size() != arity(c)) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(arity(c)) + " weights for " +
                    std::to_string(confidences.size()) + " confidences");
  }
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Simple>) {
          return eval_simple(k.p, confidences[0]);
        } else if constexpr (std::is_same_v<K, NoisyOr>) {
          return eval_noisy_or(k.weights, confidences);
        } else {
          return eval_noisy_and(k.weights, k.leak, confidences);
        }
      },
      c);
}

namespace detail {

double noisy_or_unchecked(const double* w, const double* g, std::size_t n) {
  double miss = 1.0;
  for (std::size_t i = 0; i < n; ++i) miss *= 1.0 - w[i] * g[i];
  return settle(1.0 - miss);
}

double noisy_and_unchecked(const double* w, double leak, const double* g,
                           std::size_t n) {
  // E[T(S)] over independent parents, minus the all-false table entry which
  // is pinned to zero.
  double any = 1.0;
  double none = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    any *= 1.0 - w[i] * (1.0 - g[i]);
    none *= (1.0 - w[i]) * (1.0 - g[i]);
  }
  return settle(leak * (any - none));
}

double evaluate_unchecked(const Combinator& c, const double* g) {
  switch (c.index()) {
    case 0: return settle(std::get<Simple>(c).p * g[0]);
    case 1: {
      const auto& k = std::get<NoisyOr>(c);
      return noisy_or_unchecked(k.weights.data(), g, k.weights.size());
    }
    default: {
      const auto& k = std::get<NoisyAnd>(c);
      return noisy_and_unchecked(k.weights.data(), k.leak, g, k.weights.size());
    }
  }
}

double settle(double x) {
  if (x >= 0.0 && x <= 1.0) return x;
  if (x < -kClampTolerance || x > 1.0 + kClampTolerance || x != x) {
    throw Error(ErrorCode::InternalConsistency,
                "combinator produced " + std::to_string(x) + " outside [0,1]");
  }
  return x < 0.0 ? 0.0 : 1.0;
}

}  // namespace detail

}  // namespace argus

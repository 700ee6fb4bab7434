#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace argus {

/// One-parent inference: the table is {g(B)=0 -> 0, g(B)=1 -> p}.
struct Simple {
  double p = 1.0;
  bool operator==(const Simple&) const = default;
};

/// Leak-free noisy-OR over alternative premises.
struct NoisyOr {
  std::vector<double> weights;
  bool operator==(const NoisyOr&) const = default;
};

/// Adapted noisy-AND over complementary premises. When `leak_is_default`,
/// `leak` is the mean of `weights` and is re-derived whenever they change.
struct NoisyAnd {
  std::vector<double> weights;
  double leak = 1.0;
  bool leak_is_default = true;
  bool operator==(const NoisyAnd&) const = default;
};

using Combinator = std::variant<Simple, NoisyOr, NoisyAnd>;

std::string_view combinator_name(const Combinator& c);
std::size_t arity(const Combinator& c);
double weight(const Combinator& c, std::size_t index);

/// Returns a copy with weight `index` set to `value`; a default leak is
/// re-derived from the new weights.
Combinator with_weight(const Combinator& c, std::size_t index, double value);

/// Returns a copy of a NoisyAnd with an explicit leak.
Combinator with_leak(const Combinator& c, double leak);

/// Mean of the weights. Throws EmptyWeights on an empty list.
double default_leak(std::span<const double> weights);

NoisyAnd make_noisy_and(std::vector<double> weights);
NoisyAnd make_noisy_and(std::vector<double> weights, double leak);

/// p * g
double eval_simple(double p, double g);

/// 1 - prod(1 - p_i g_i)
double eval_noisy_or(std::span<const double> weights,
                     std::span<const double> confidences);

/// v * [prod(1 - p_i (1 - g_i)) - prod((1 - p_i)(1 - g_i))]
double eval_noisy_and(std::span<const double> weights, double leak,
                      std::span<const double> confidences);

/// Dispatches on the variant; `confidences` must match the combinator arity.
double evaluate(const Combinator& c, std::span<const double> confidences);

namespace detail {

// Unchecked forms used by the propagation kernels once inputs are validated.
double noisy_or_unchecked(const double* w, const double* g, std::size_t n);
double noisy_and_unchecked(const double* w, double leak, const double* g,
                           std::size_t n);
double evaluate_unchecked(const Combinator& c, const double* g);

// Clamps representation error into [0,1]; larger excursions throw
// InternalConsistency.
double settle(double x);

}  // namespace detail

}  // namespace argus

#pragma once

#include <cstdint>
#include <span>

#include "argus/combinators.hpp"

namespace argus {

/// Largest parent count the oracle will enumerate (2^20 assignments).
inline constexpr std::size_t kMaxOracleParents = 20;

/// Conditional-table entry of `c` when exactly the parents whose bits are set
/// in `true_parents` hold.
double table_entry(const Combinator& c, std::uint32_t true_parents);

/// Expectation of the combinator's table over independent Bernoulli(g_i)
/// parents, computed by enumerating every parent assignment. Independent of
/// the closed forms in combinators.hpp; used to check them.
double cpt_oracle(const Combinator& c, std::span<const double> confidences);

}  // namespace argus

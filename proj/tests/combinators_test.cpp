#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "argus/combinators.hpp"
#include "argus/cpt_oracle.hpp"
#include "argus/error.hpp"

namespace argus {
namespace {

std::vector<double> draw(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double r = u(rng);
    x = r < 0.05 ? 0.0 : r > 0.95 ? 1.0 : u(rng);
  }
  return out;
}

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Simple, ScalesConfidenceByWeight) {
  EXPECT_DOUBLE_EQ(eval_simple(0.9, 0.8), 0.72);
  EXPECT_EQ(eval_simple(0.0, 0.7), 0.0);
  EXPECT_EQ(eval_simple(1.0, 0.7), 0.7);
}

TEST(NoisyOr, AlternativeExampleValue) {
  const std::vector<double> w{0.9, 0.7};
  EXPECT_NEAR(eval_noisy_or(w, std::vector<double>{0.8, 0.7}), 0.8572, 1e-12);
  EXPECT_NEAR(eval_noisy_or(w, std::vector<double>{0.0, 0.7}), 0.49, 1e-12);
  EXPECT_NEAR(eval_noisy_or(w, std::vector<double>{1.0, 0.7}), 0.949, 1e-12);
  EXPECT_NEAR(eval_noisy_or(w, std::vector<double>{0.8, 0.0}), 0.72, 1e-12);
  EXPECT_NEAR(eval_noisy_or(w, std::vector<double>{0.8, 1.0}), 0.916, 1e-12);
}

TEST(NoisyOr, FullWeightsGiveProbabilisticSum) {
  EXPECT_NEAR(eval_noisy_or(std::vector<double>{1.0, 1.0},
                            std::vector<double>{0.5, 0.75}),
              0.875, 1e-12);
}

TEST(NoisyOr, AllFalseParentsGiveZero) {
  EXPECT_EQ(eval_noisy_or(std::vector<double>{0.3, 1.0, 0.6},
                          std::vector<double>{0.0, 0.0, 0.0}),
            0.0);
}

TEST(NoisyAnd, ComplementaryExampleValue) {
  EXPECT_NEAR(eval_noisy_and(std::vector<double>{0.8, 0.6}, 0.7,
                             std::vector<double>{0.5, 0.5}),
              0.28, 1e-12);
}

TEST(NoisyAnd, CornerTableWithDefaultLeak) {
  const double p = 0.8, q = 0.6, v = (p + q) / 2;
  const std::vector<double> w{p, q};
  auto at = [&](double b, double c) {
    return eval_noisy_and(w, v, std::vector<double>{b, c});
  };
  EXPECT_EQ(at(0, 0), 0.0);
  EXPECT_NEAR(at(1, 0), v * (1 - q), 1e-15);
  EXPECT_NEAR(at(0, 1), v * (1 - p), 1e-15);
  EXPECT_NEAR(at(1, 1), v, 1e-15);
}

TEST(NoisyAnd, AllTrueParentsGiveLeak) {
  EXPECT_NEAR(eval_noisy_and(std::vector<double>{0.2, 0.9, 0.4}, 0.55,
                             std::vector<double>{1, 1, 1}),
              0.55, 1e-15);
}

TEST(NoisyAnd, ZeroLaw) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto w = draw(rng, n);
    EXPECT_EQ(eval_noisy_and(w, 0.5, std::vector<double>(n, 0.0)), 0.0);
    EXPECT_EQ(eval_noisy_or(w, std::vector<double>(n, 0.0)), 0.0);
  }
}

TEST(NoisyAnd, ResidualLaw) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double p = u(rng), q = u(rng), c = u(rng), v = u(rng);
    const std::vector<double> w{p, q};
    const std::vector<double> g{0.0, c};
    EXPECT_NEAR(eval_noisy_and(w, v, g), v * (1 - p) * c, 1e-12);
    EXPECT_NEAR(cpt_oracle(make_noisy_and(w, v), g), v * (1 - p) * c, 1e-12);
  }
}

TEST(DefaultLeak, IsMeanOfWeights) {
  EXPECT_DOUBLE_EQ(default_leak(std::vector<double>{0.8, 0.6}), 0.7);
  const auto na = make_noisy_and({1.0, 0.8, 0.6});
  EXPECT_TRUE(na.leak_is_default);
  EXPECT_DOUBLE_EQ(na.leak, 0.8);
  expect_error(ErrorCode::EmptyWeights,
               [] { default_leak(std::vector<double>{}); });
}

TEST(DefaultLeak, RederivedWhenWeightChanges) {
  const Combinator c = make_noisy_and({0.8, 0.6});
  const auto changed = std::get<NoisyAnd>(with_weight(c, 1, 1.0));
  EXPECT_DOUBLE_EQ(changed.leak, 0.9);
  EXPECT_TRUE(changed.leak_is_default);
  const Combinator explicit_leak = make_noisy_and({0.8, 0.6}, 0.3);
  EXPECT_DOUBLE_EQ(std::get<NoisyAnd>(with_weight(explicit_leak, 1, 1.0)).leak, 0.3);
}

TEST(WithLeak, MakesLeakExplicit) {
  const auto c = std::get<NoisyAnd>(with_leak(make_noisy_and({0.8, 0.6}), 0.4));
  EXPECT_FALSE(c.leak_is_default);
  EXPECT_EQ(c.leak, 0.4);
  expect_error(ErrorCode::UnknownVariable,
               [] { with_leak(NoisyOr{{0.5}}, 0.4); });
}

TEST(Combinator, NamesArityAndWeights) {
  const Combinator s = Simple{0.4};
  const Combinator o = NoisyOr{{0.1, 0.2}};
  const Combinator a = make_noisy_and({0.3, 0.4, 0.5});
  EXPECT_EQ(combinator_name(s), "simple");
  EXPECT_EQ(combinator_name(o), "noisy_or");
  EXPECT_EQ(combinator_name(a), "noisy_and");
  EXPECT_EQ(arity(s), 1u);
  EXPECT_EQ(arity(o), 2u);
  EXPECT_EQ(arity(a), 3u);
  EXPECT_EQ(weight(a, 2), 0.5);
  EXPECT_EQ(weight(s, 0), 0.4);
}

TEST(Combinator, RejectsBadInputs) {
  expect_error(ErrorCode::LengthMismatch, [] {
    eval_noisy_or(std::vector<double>{0.5}, std::vector<double>{0.5, 0.5});
  });
  expect_error(ErrorCode::EmptyWeights, [] {
    eval_noisy_or(std::vector<double>{}, std::vector<double>{});
  });
  expect_error(ErrorCode::EmptyWeights, [] {
    eval_noisy_and(std::vector<double>{}, 0.5, std::vector<double>{});
  });
  expect_error(ErrorCode::ValueOutOfRange, [] {
    eval_noisy_or(std::vector<double>{1.5}, std::vector<double>{0.5});
  });
  expect_error(ErrorCode::ValueOutOfRange, [] {
    eval_noisy_and(std::vector<double>{0.5}, -0.1, std::vector<double>{0.5});
  });
  expect_error(ErrorCode::ValueOutOfRange, [] { eval_simple(0.5, 1.01); });
  expect_error(ErrorCode::ValueOutOfRange,
               [] { eval_simple(std::nan(""), 0.5); });
  expect_error(ErrorCode::LengthMismatch, [] {
    evaluate(Simple{0.5}, std::vector<double>{0.5, 0.5});
  });
}

TEST(Combinator, DegenerateArityCoincides) {
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double p = i / 99.0, g = j / 99.0;
      const std::vector<double> w{p}, gs{g};
      const double simple = eval_simple(p, g);
      EXPECT_NEAR(eval_noisy_or(w, gs), simple, 1e-15);
      EXPECT_NEAR(eval_noisy_and(w, default_leak(w), gs), simple, 1e-15);
    }
  }
}

TEST(Combinator, PermutationSymmetry) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 5;
    auto w = draw(rng, n);
    auto g = draw(rng, n);
    const double v = draw(rng, 1)[0];
    const double or0 = eval_noisy_or(w, g);
    const double and0 = eval_noisy_and(w, v, g);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pw(n), pg(n);
    for (std::size_t i = 0; i < n; ++i) {
      pw[i] = w[perm[i]];
      pg[i] = g[perm[i]];
    }
    EXPECT_NEAR(eval_noisy_or(pw, pg), or0, 1e-12);
    EXPECT_NEAR(eval_noisy_and(pw, v, pg), and0, 1e-12);
  }
}

TEST(Combinator, NoisyOrStrictlyIncreasingWhenOthersBelowCertainty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<double> w(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = u(rng);
      g[i] = u(rng);
    }
    const std::size_t k = rng() % n;
    auto lo = g, hi = g;
    lo[k] = 0.1;
    hi[k] = 0.9;
    EXPECT_LT(eval_noisy_or(w, lo), eval_noisy_or(w, hi));
  }
}

TEST(Combinator, MonotoneAndBounded) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto w = draw(rng, n);
    auto g = draw(rng, n);
    const double v = draw(rng, 1)[0];
    const std::size_t k = rng() % n;
    auto lo = g, hi = g;
    lo[k] = std::min(g[k], 0.3);
    hi[k] = std::max(g[k], 0.7);
    for (const Combinator& c : {Combinator{NoisyOr{w}}, Combinator{make_noisy_and(w, v)}}) {
      const double a = evaluate(c, lo), b = evaluate(c, hi);
      EXPECT_GE(a, 0.0);
      EXPECT_LE(b, 1.0);
      EXPECT_LE(a, b + 1e-15);
    }
  }
}

TEST(CptOracle, TableEntries) {
  const Combinator o = NoisyOr{{0.9, 0.7}};
  EXPECT_EQ(table_entry(o, 0b00), 0.0);
  EXPECT_NEAR(table_entry(o, 0b01), 0.9, 1e-15);
  EXPECT_NEAR(table_entry(o, 0b10), 0.7, 1e-15);
  EXPECT_NEAR(table_entry(o, 0b11), 0.97, 1e-15);
  const Combinator a = make_noisy_and({0.8, 0.6});
  EXPECT_EQ(table_entry(a, 0b00), 0.0);
  EXPECT_NEAR(table_entry(a, 0b01), 0.7 * 0.4, 1e-15);
  EXPECT_NEAR(table_entry(a, 0b10), 0.7 * 0.2, 1e-15);
  EXPECT_NEAR(table_entry(a, 0b11), 0.7, 1e-15);
  EXPECT_EQ(table_entry(Simple{0.4}, 0), 0.0);
  EXPECT_EQ(table_entry(Simple{0.4}, 1), 0.4);
}

TEST(CptOracle, MatchesClosedForms) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto w = draw(rng, n);
    const auto g = draw(rng, n);
    const double v = draw(rng, 1)[0];
    EXPECT_NEAR(cpt_oracle(NoisyOr{w}, g), eval_noisy_or(w, g), 1e-12);
    EXPECT_NEAR(cpt_oracle(make_noisy_and(w, v), g), eval_noisy_and(w, v, g), 1e-12);
    EXPECT_NEAR(cpt_oracle(Simple{w[0]}, std::vector<double>{g[0]}),
                eval_simple(w[0], g[0]), 1e-12);
  }
}

TEST(CptOracle, RejectsOversizedAndMismatched) {
  expect_error(ErrorCode::TooManyParents, [] {
    const std::vector<double> w(kMaxOracleParents + 1, 0.5);
    cpt_oracle(NoisyOr{w}, w);
  });
  expect_error(ErrorCode::LengthMismatch, [] {
    cpt_oracle(NoisyOr{{0.5}}, std::vector<double>{0.5, 0.5});
  });
}

TEST(Settle, ClampsRepresentationErrorOnly) {
  EXPECT_EQ(detail::settle(1.0 + 1e-15), 1.0);
  EXPECT_EQ(detail::settle(-1e-15), 0.0);
  EXPECT_EQ(detail::settle(0.25), 0.25);
  expect_error(ErrorCode::InternalConsistency, [] { detail::settle(1.1); });
  expect_error(ErrorCode::InternalConsistency,
               [] { detail::settle(std::nan("")); });
}

}  // namespace
}  // namespace argus

#include <gtest/gtest.h>

#include <random>

#include "argus/error.hpp"
#include "argus/model_document.hpp"
#include "argus/propagation.hpp"
#include "test_support.hpp"

namespace argus {
namespace {

struct Loaded {
  ArgumentModel model;
  ConfidenceNetwork network;
  Assessment baseline;
};

Loaded load(const std::string& name) {
  auto model = load_model(testing::data_path(name));
  auto network = transform(model);
  auto baseline = baseline_assessment(model);
  return {std::move(model), std::move(network), std::move(baseline)};
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::SyntaxError;
}

TEST(Propagate, AlternativeExample) {
  const auto f = load("alt_example.yaml");
  const auto r = propagate(f.network, f.baseline);
  EXPECT_NEAR(r.root_confidence, 0.8572, 1e-12);
  EXPECT_EQ(r.root, "A");
  EXPECT_EQ(r.at("B"), 0.8);
  EXPECT_EQ(r.values.size(), 3u);
}

TEST(Propagate, AlternativeExampleExcursions) {
  const auto f = load("alt_example.yaml");
  auto at = [&](const Assessment& patch) {
    return propagate(f.network, patched(f.baseline, patch)).root_confidence;
  };
  EXPECT_NEAR(at({{"B", 0.0}}), 0.49, 1e-12);
  EXPECT_NEAR(at({{"B", 1.0}}), 0.949, 1e-12);
  EXPECT_NEAR(at({{"C", 0.0}}), 0.72, 1e-12);
  EXPECT_NEAR(at({{"C", 1.0}}), 0.916, 1e-12);
  EXPECT_NEAR(at({{"B", 0.5}, {"C", 0.75}}), 1 - 0.55 * 0.475, 1e-12);
}

TEST(Propagate, FullWeightAlternative) {
  ModelInput in;
  in.nodes = {{"A", NodeKind::Goal, ""},
              {"B", NodeKind::Solution, ""},
              {"C", NodeKind::Solution, ""}};
  in.edges = {{EdgeKind::SupportedBy, "A", "B"}, {EdgeKind::SupportedBy, "A", "C"}};
  ArgumentGroup g;
  g.kind = ArgumentKind::Alternative;
  g.children = {{"B", nullptr, 1.0}, {"C", nullptr, 1.0}};
  in.specs = {{"A", g}};
  in.confidences = {{"B", 0.5}, {"C", 0.75}};
  const auto m = build_model(in);
  EXPECT_NEAR(propagate(transform(m), baseline_assessment(m)).root_confidence,
              0.875, 1e-12);
}

TEST(Propagate, MixedArgumentMatchesPlainAlternative) {
  const auto f = load("mixed_argument.yaml");
  const auto r = propagate(f.network, f.baseline);
  EXPECT_NEAR(r.at("I_B_C"), 0.8572, 1e-12);
  EXPECT_NEAR(r.root_confidence, 0.8572, 1e-12);
}

TEST(Propagate, FixtureValues) {
  EXPECT_NEAR(propagate(load("complementary.yaml").network,
                        load("complementary.yaml").baseline)
                  .root_confidence,
              0.28, 1e-12);
  const auto hazard = load("hazard_avoidance.yaml");
  EXPECT_NEAR(propagate(hazard.network, hazard.baseline).root_confidence,
              78894783.0 / 156250000.0, 1e-12);
  const auto nested = load("nested_groups.yaml");
  const auto r = propagate(nested.network, nested.baseline);
  EXPECT_NEAR(r.at("I_T_F"), 0.8108, 1e-12);
  EXPECT_NEAR(r.root_confidence, 317442087.0 / 500000000.0, 1e-12);
}

TEST(Propagate, ParameterOverrides) {
  const auto f = load("alt_example.yaml");
  Overrides o;
  add_override(o, "w:A:0", 0.0);
  EXPECT_NEAR(propagate(f.network, f.baseline, o.parameters).root_confidence, 0.49,
              1e-12);
  o = {};
  add_override(o, "w:A:0", 1.0);
  EXPECT_NEAR(propagate(f.network, f.baseline, o.parameters).root_confidence, 0.898,
              1e-12);
}

TEST(Propagate, LeakOverrideOnlyForExplicitLeak) {
  const auto nested = load("nested_groups.yaml");
  Overrides o;
  add_override(o, "v:G", 0.45);
  const auto half = propagate(nested.network, nested.baseline, o.parameters);
  EXPECT_NEAR(half.root_confidence, 317442087.0 / 500000000.0 / 2, 1e-12);

  const auto comp = load("complementary.yaml");
  EXPECT_EQ(code_of([&] { propagate(comp.network, comp.baseline, o.parameters); }),
            ErrorCode::UnknownVariable);
  Overrides leak_on_default;
  add_override(leak_on_default, "v:A", 0.3);
  EXPECT_EQ(code_of([&] {
              propagate(comp.network, comp.baseline, leak_on_default.parameters);
            }),
            ErrorCode::UnknownVariable);
}

TEST(Propagate, WeightOverrideRederivesDefaultLeak) {
  const auto comp = load("complementary.yaml");
  Overrides o;
  add_override(o, "w:A:1", 1.0);
  EXPECT_NEAR(propagate(comp.network, comp.baseline, o.parameters).root_confidence,
              0.27, 1e-12);
}

TEST(Propagate, OverrideKeyParsing) {
  Overrides o;
  add_override(o, "B", 0.5);
  add_override(o, "w:A:1", 0.25);
  add_override(o, "v:A", 0.75);
  EXPECT_EQ(o.leaves.at("B"), 0.5);
  ASSERT_EQ(o.parameters.size(), 2u);
  EXPECT_EQ(o.parameters[0],
            (ParameterOverride{ParameterOverride::Kind::Weight, "A", 1, 0.25}));
  EXPECT_EQ(o.parameters[1],
            (ParameterOverride{ParameterOverride::Kind::Leak, "A", 0, 0.75}));
  for (const char* bad : {"w:A", "w:A:x", "w::1", "v:", "", "a:b", "w:A:-1"}) {
    EXPECT_EQ(code_of([&] { add_override(o, bad, 0.5); }), ErrorCode::UnknownVariable)
        << bad;
  }
  EXPECT_EQ(code_of([&] { add_override(o, "B", 1.5); }), ErrorCode::ValueOutOfRange);
}

TEST(Propagate, ErrorPaths) {
  const auto f = load("alt_example.yaml");
  EXPECT_EQ(code_of([&] { propagate(f.network, Assessment{{"B", 0.5}}); }),
            ErrorCode::IncompleteAssessment);
  EXPECT_EQ(code_of([&] {
              propagate(f.network, Assessment{{"B", 0.5}, {"C", 0.5}, {"A", 0.5}});
            }),
            ErrorCode::UnknownLeaf);
  EXPECT_EQ(code_of([&] {
              propagate(f.network, Assessment{{"B", 0.5}, {"C", -0.5}});
            }),
            ErrorCode::ValueOutOfRange);
  EXPECT_EQ(code_of([&] { patched(f.baseline, {{"Z", 0.5}}); }), ErrorCode::UnknownLeaf);
  EXPECT_EQ(code_of([&] { propagate(f.network, f.baseline).at("Z"); }),
            ErrorCode::UnknownTarget);
  for (const auto& p : {ParameterOverride{ParameterOverride::Kind::Weight, "A", 2, 0.5},
                        ParameterOverride{ParameterOverride::Kind::Weight, "B", 0, 0.5},
                        ParameterOverride{ParameterOverride::Kind::Weight, "Q", 0, 0.5}}) {
    const std::vector<ParameterOverride> ps{p};
    EXPECT_EQ(code_of([&] { propagate(f.network, f.baseline, ps); }),
              ErrorCode::UnknownVariable);
  }
}

TEST(Propagate, AgreesWithRecursiveOracleOnRandomModels) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const auto m = testing::random_model(rng);
    const auto net = transform(m);
    const auto a = testing::random_assessment(net, rng);
    const auto r = propagate(net, a);
    for (const auto& n : net.nodes()) {
      EXPECT_NEAR(r.at(n.id), testing::recursive_value(net, a, n.id), 1e-12);
    }
  }
}

TEST(Propagate, RangeAndMonotonicity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const auto m = testing::random_model(rng);
    const auto net = transform(m);
    const auto a = testing::random_assessment(net, rng);
    const auto base = propagate(net, a);
    for (const auto& [id, g] : base.values) {
      EXPECT_GE(g, 0.0);
      EXPECT_LE(g, 1.0);
    }
    for (const auto& leaf : net.leaf_ids()) {
      auto up = a;
      up[leaf] = a.at(leaf) + (1.0 - a.at(leaf)) * u(rng);
      const auto raised = propagate(net, up);
      for (const auto& [id, g] : raised.values) {
        EXPECT_GE(g, base.values.at(id) - 1e-12) << id << " raising " << leaf;
      }
    }
  }
}

TEST(Propagate, Deterministic) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto m = testing::random_model(rng);
    const auto net = transform(m);
    const auto a = testing::random_assessment(net, rng);
    EXPECT_EQ(propagate(net, a), propagate(net, a));
  }
}

TEST(PropagateBatch, MatchesSerialLoop) {
  const auto m = testing::scale_model();
  const auto net = transform(m);
  std::mt19937_64 rng(8);
  std::vector<Assessment> batch;
  for (int i = 0; i < 64; ++i) batch.push_back(testing::random_assessment(net, rng));
  const auto results = propagate_batch(net, batch);
  ASSERT_EQ(results.size(), batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(results[i], propagate(net, batch[i]));
  }
}

TEST(PropagateBatch, ValidatesEveryAssessment) {
  const auto f = load("alt_example.yaml");
  std::vector<Assessment> batch{f.baseline, Assessment{{"B", 0.5}}};
  EXPECT_EQ(code_of([&] { propagate_batch(f.network, batch); }),
            ErrorCode::IncompleteAssessment);
  EXPECT_TRUE(propagate_batch(f.network, {}).empty());
}

TEST(Propagate, ScaleModelShape) {
  const auto net = transform(testing::scale_model());
  EXPECT_EQ(net.size(), 65u);
  std::size_t alternatives = 0;
  for (const auto& n : net.nodes()) {
    if (n.combinator && std::holds_alternative<NoisyOr>(*n.combinator)) ++alternatives;
  }
  EXPECT_EQ(alternatives, 2u);
}

}  // namespace
}  // namespace argus

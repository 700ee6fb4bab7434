#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "argus/cli.hpp"
#include "argus/report_document.hpp"
#include "test_support.hpp"

namespace argus {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return testing::data_path(name).string();
}

TEST(Cli, ValidateOk) {
  const auto r = run({"validate", fixture("alt_example.yaml")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "OK\n");
}

TEST(Cli, ValidateCyclic) {
  const auto r = run({"validate", fixture("cyclic.yaml")});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.out.find("CycleDetected"), std::string::npos);
}

TEST(Cli, EvaluateText) {
  const auto r = run({"evaluate", fixture("alt_example.yaml")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "B 0.8\nC 0.7\nA 0.8572\n");
}

TEST(Cli, EvaluateWithOverrides) {
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "B=1"}).out,
            "B 1\nC 0.7\nA 0.949\n");
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "w:A:0=1"}).out,
            "B 0.8\nC 0.7\nA 0.898\n");
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "B=0.5", "--set",
                 "C=0.75", "--set", "w:A:0=1", "--set", "w:A:1=1"})
                .out,
            "B 0.5\nC 0.75\nA 0.875\n");
}

TEST(Cli, EvaluateErrors) {
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "Z=1"}).code,
            kExitDomainError);
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "B=2"}).code,
            kExitDomainError);
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "B"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--set", "B=x"}).code,
            kExitUsage);
  EXPECT_EQ(run({"evaluate", fixture("cyclic.yaml")}).code, kExitDomainError);
  EXPECT_EQ(run({"evaluate", fixture("missing.yaml")}).code, kExitDomainError);
}

TEST(Cli, EvaluateJsonIsStable) {
  const auto a = run({"evaluate", fixture("hazard_avoidance.yaml"), "--format", "json"});
  const auto b = run({"evaluate", fixture("hazard_avoidance.yaml"), "--format", "json"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NEAR(parse_report(a.out).root_confidence, 0.5049266112, 1e-12);
}

TEST(Cli, TornadoTop) {
  const auto r = run({"tornado", fixture("alt_example.yaml"), "--target", "A", "--top", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("g(B) [0.49, 0.949]"), std::string::npos);
  EXPECT_EQ(r.out.find("g(C)"), std::string::npos);
}

TEST(Cli, TornadoJsonAndSvg) {
  const auto j = run({"tornado", fixture("alt_example.yaml"), "--target", "A", "--format",
                      "json", "--var", "B", "--var", "C"});
  ASSERT_EQ(j.code, kExitOk) << j.err;
  const auto report = parse_report(j.out);
  ASSERT_TRUE(report.tornado.has_value());
  ASSERT_EQ(report.tornado->entries.size(), 2u);
  EXPECT_EQ(report.tornado->entries[0].key, "B");
  EXPECT_EQ(report.tornado->entries[0].raises, "max");
  EXPECT_EQ(j.out, run({"tornado", fixture("alt_example.yaml"), "--target", "A",
                        "--format", "json", "--var", "B", "--var", "C"})
                       .out);
  const auto s = run({"tornado", fixture("alt_example.yaml"), "--target", "A", "--format", "svg"});
  EXPECT_EQ(s.out.rfind("<svg", 0), 0u);
}

TEST(Cli, TornadoErrors) {
  EXPECT_EQ(run({"tornado", fixture("alt_example.yaml"), "--target", "Q"}).code,
            kExitDomainError);
  EXPECT_EQ(run({"tornado", fixture("alt_example.yaml"), "--target", "A", "--var", "Q"}).code,
            kExitDomainError);
  EXPECT_EQ(run({"tornado", fixture("alt_example.yaml")}).code, kExitUsage);
}

TEST(Cli, TransformFormats) {
  const auto j = run({"transform", fixture("mixed_argument.yaml")});
  EXPECT_EQ(j.code, kExitOk);
  EXPECT_NE(j.out.find("\"I_B_C\""), std::string::npos);
  EXPECT_EQ(j.out, run({"transform", fixture("mixed_argument.yaml")}).out);
  const auto d = run({"transform", fixture("mixed_argument.yaml"), "--format", "dot"});
  EXPECT_TRUE(testing::dot_well_formed(d.out));
}

TEST(Cli, ExportWritesDot) {
  const auto path = std::filesystem::temp_directory_path() / "argus_cli_export_test.dot";
  std::filesystem::remove(path);
  const auto r = run({"export", fixture("alt_example.yaml"), "--dot", path.string(),
                      "--with-values"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto dot = testing::read_file(path);
  EXPECT_TRUE(testing::dot_well_formed(dot));
  EXPECT_NE(dot.find("0.8572"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"export", fixture("alt_example.yaml"), "--dot", "/nonexistent/dir/x.dot"}).code,
            kExitDomainError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate", fixture("alt_example.yaml"), "--format", "xml"}).code,
            kExitUsage);
  EXPECT_EQ(run({"serve", "--port", "70000", "--model", fixture("alt_example.yaml")}).code,
            kExitUsage);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("evaluate"), std::string::npos);
}

}  // namespace
}  // namespace argus

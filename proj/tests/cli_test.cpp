#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using surgerylab::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SURGERYLAB_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, MuClosedForm) {
  const Result r = call({"mu", "3", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["command"], "mu");
  EXPECT_EQ(j["outputs"]["mu"], "4");
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_EQ(call({"mu", "5", "3"}).report()["outputs"]["mu"], "25/2");
}

TEST(Cli, MuOracleCertifiesFailuresBelowThreshold) {
  const Result r = call({"mu", "3", "2", "--oracle", "--denoms", "2", "--window", "1", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json oracle = r.report()["outputs"]["oracle"];
  EXPECT_EQ(oracle["value"], "4");
  const auto& failures = oracle["exhausted_failures"];
  EXPECT_NE(std::find(failures.begin(), failures.end(), "7/2"), failures.end());
  EXPECT_NE(std::find(failures.begin(), failures.end(), "3"), failures.end());
  EXPECT_TRUE(r.report()["verification"][0]["passed"].get<bool>());
}

TEST(Cli, EmbedSamples) {
  const Result e8 = call({"embed", sample("e8.json")});
  ASSERT_EQ(e8.code, 0) << e8.err;
  EXPECT_FALSE(e8.report()["outputs"]["found"].get<bool>());
  EXPECT_TRUE(e8.report()["outputs"]["exhausted"].get<bool>());

  const Result t = call({"embed", sample("trefoil_4.json"), "--enumerate"});
  ASSERT_EQ(t.code, 0) << t.err;
  const json out = t.report()["outputs"];
  EXPECT_TRUE(out["found"].get<bool>());
  ASSERT_FALSE(out["primitive"].empty());
  EXPECT_EQ(out["primitive"].size(), out["witnesses"].size());
}

TEST(Cli, PlumbingDot) {
  const Result r = call({"plumbing", "3", "2", "4", "--dot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("graph plumbing", 0), 0u);
}

TEST(Cli, SeifertAndBlowdownAndCobordisms) {
  EXPECT_EQ(call({"seifert", "3", "2", "4"}).report()["outputs"]["h1_order"], 4);
  EXPECT_EQ(call({"seifert", "3", "2", "6"}).report()["outputs"]["h1_order"], "infinite");
  const json blow = call({"blowdown", "5", "3"}).report();
  EXPECT_TRUE(blow["outputs"]["success"].get<bool>());
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"cobordism", "chain", "1", "3"},
           {"cobordism", "sum", "2", "3"},
           {"cobordism", "sum", "1", "1", "--pq", "3", "1"},
           {"cobordism", "half", "2", "1", "1"},
           {"cf", "7/5"},
           {"cf", "--evaluate", "minus", "2", "2", "3"}}) {
    const Result r = call(args);
    EXPECT_EQ(r.code, 0) << args[0] << ": " << r.err;
  }
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"embed", sample("trefoil_4.json"), "--enumerate"};
  EXPECT_EQ(call(args).out, call(args).out);
  EXPECT_TRUE(call({"--timing", "mu", "3", "2"}).report().contains("elapsed_ms"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"mu", "3"}).code, 2);
  EXPECT_EQ(call({"mu", "4", "2"}).code, 2);
  EXPECT_EQ(call({"plumbing", "3", "2", "9"}).code, 2);
  EXPECT_EQ(call({"embed", sample("missing.json")}).code, 2);
  EXPECT_EQ(call({"verify-all", "--pmax", "2"}).code, 2);
  const Result r = call({"bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, FailedVerificationIsReported) {
  surgerylab::cli::RunReport rep;
  rep.check("holds", true);
  EXPECT_TRUE(rep.passed());
  rep.check("fails", false);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(static_cast<int>(surgerylab::cli::ExitCode::kVerificationFailed), 1);
}

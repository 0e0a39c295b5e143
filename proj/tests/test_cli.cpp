#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "klab/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("klab-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "-" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    dir_string_ = dir_.string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "klab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = klab::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err, [this](const char* n) -> const char* {
      return std::string(n) == "KLAB_CACHE_DIR" ? dir_string_.c_str() : nullptr;
    });
    return {code, out.str(), err.str()};
  }

  Json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    const Outcome r = run(args);
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    return Json::parse(r.out);
  }

  fs::path dir_;
  std::string dir_string_;
};

}  // namespace

TEST_F(CliTest, GroupCanonicalForm) {
  const Outcome r = run({"group", "--spec", "C2xC3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("C6"), std::string::npos);
  const Json j = run_json({"group", "--spec", "C2xC3"});
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "group");
  EXPECT_EQ(j["result"]["group"]["spec"], "C6");
}

TEST_F(CliTest, AampWitnessFound) {
  const Outcome r = run({"aamp", "--set", "2,3", "--d", "1", "--bound", "0"});
  EXPECT_EQ(r.code, 0);
  const Json j = run_json({"aamp", "--set", "2,3", "--d", "1", "--bound", "0"});
  EXPECT_EQ(j["result"]["is_aamp"], true);
  const Json none = run_json({"aamp", "--set", "2,4,6,7", "--d", "2", "--bound", "1"});
  EXPECT_EQ(none["result"]["is_aamp"], false);
}

TEST_F(CliTest, RealizeRejectsLengthOne) {
  const Outcome r = run({"realize", "--lengths", "1,3", "--mult", "1,1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("lengths must be"), std::string::npos);
  const Outcome j = run({"--json", "realize", "--lengths", "1,3", "--mult", "1,1"});
  EXPECT_EQ(j.code, 1);
  const Json err = Json::parse(j.out);
  EXPECT_EQ(err["error"]["kind"], "out-of-hypothesis");
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"group", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const Outcome r = run({"atoms"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  EXPECT_EQ(run({"group", "--spec", "C1"}).code, 1);
  EXPECT_EQ(run({"atoms", "--group", "Z", "--support", "[1,-1]"}).code, 1);
  EXPECT_EQ(run({"delta-star", "--group", "C9"}).code, 1);
  EXPECT_EQ(run({"model", "--component", "Z"}).code, 1);
  const Outcome j = run({"--json", "delta-star", "--group", "C9"});
  EXPECT_EQ(Json::parse(j.out)["error"]["kind"], "guard-exceeded");
}

TEST_F(CliTest, LengthsExample) {
  const Json j = run_json({"lengths", "--group", "C3", "--support", "[1,2]", "--sequence", "[1^3,2^3]"});
  EXPECT_EQ(j["result"]["length_set"], Json::parse("[2,3]"));
  EXPECT_EQ(j["result"]["delta_set"], Json::parse("[1]"));
}

TEST_F(CliTest, DeltaStarReportsFormula) {
  const Json j = run_json({"delta-star", "--group", "C2xC2", "--cap", "12"});
  EXPECT_EQ(j["result"]["delta_star"], Json::parse("[1]"));
  EXPECT_EQ(j["result"]["element_cap"], 12);
}

TEST_F(CliTest, ModelAndLocalize) {
  const Json m = run_json({"model", "--component", "C2", "--component", "C3"});
  EXPECT_EQ(m["result"]["presentation"]["class_group"], "C6");
  const Json l = run_json({"localize", "--component", "C2", "--component", "C3", "--keep-component", "1"});
  EXPECT_EQ(l["result"]["localized"]["class_group"], "C3");

  fs::create_directories(dir_);
  const fs::path file = dir_ / "p.json";
  std::ofstream(file) << R"({"class_group":"C4","classes":[{"element":"1","count":2},{"element":"3","count":"omega"}]})";
  const Json p = run_json({"localize", "--presentation", file.string(), "--invert", "prime=p0.0"});
  EXPECT_EQ(p["result"]["localized"]["class_group"], "0");
  EXPECT_EQ(run({"localize", "--presentation", file.string(), "--invert", "prime=zzz"}).code, 1);
}

TEST_F(CliTest, CacheDoesNotChangeOutput) {
  const std::vector<std::vector<std::string>> commands{
      {"atoms", "--group", "C2xC4"},
      {"atoms", "--group", "Z", "--support", "[-2,1,3]", "--cap", "6"},
      {"lengths", "--group", "C5", "--support", "[1,4]", "--sequence", "[1^5,4^5]", "--factorizations"},
  };
  for (const auto& c : commands) {
    for (bool json : {false, true}) {
      auto args = c;
      if (json) args.insert(args.begin(), "--json");
      auto uncached = args;
      uncached.insert(uncached.begin(), "--no-cache");
      const Outcome cold = run(args), warm = run(args), none = run(uncached);
      ASSERT_EQ(cold.code, 0) << cold.err;
      EXPECT_EQ(cold.out, warm.out);
      EXPECT_EQ(cold.out, none.out);
    }
  }
  const Json stats = run_json({"cache", "stats"});
  EXPECT_EQ(stats["result"]["entries"], 3);
  run({"cache", "clear"});
  EXPECT_EQ(run_json({"cache", "stats"})["result"]["entries"], 0);
}

TEST_F(CliTest, HumanOutputCarriesJsonData) {
  const Outcome human = run({"lengths", "--group", "C3", "--support", "[1,2]", "--sequence", "[1^3,2^3]"});
  const Json j = run_json({"lengths", "--group", "C3", "--support", "[1,2]", "--sequence", "[1^3,2^3]"});
  ASSERT_EQ(human.code, 0);
  for (const auto& [key, value] : j["result"].items()) EXPECT_NE(human.out.find(key), std::string::npos) << key;
  EXPECT_NE(human.out.find("[2, 3]"), std::string::npos);
}

TEST_F(CliTest, EveryCommandRuns) {
  const std::vector<std::vector<std::string>> commands{
      {"quotient", "--group", "Z^2", "--rel", "(2,0)", "--rel", "(0,3)"},
      {"delta", "--group", "C4", "--support", "[1,3]", "--cap", "12"},
      {"halffactorial", "--group", "C3", "--support", "[1,2]", "--cap", "9"},
      {"aamp-survey", "--group", "C3", "--cap", "9"},
      {"realize", "--lengths", "2,3", "--mult", "1,1", "--family", "C3"},
      {"cache", "path"},
  };
  for (const auto& c : commands) {
    const Outcome r = run(c);
    EXPECT_EQ(r.code, 0) << c[0] << ": " << r.err;
  }
  EXPECT_EQ(run_json(commands[0])["result"]["quotient"]["spec"], "C6");
}

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fdlab/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) {
  return (fs::path(FDLAB_TEST_DATA_DIR) / name).string();
}

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fdlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Result check(const std::string& table, const std::string& fds, const std::string& semantics,
             std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"check",   "--table",     data(table), "--fds",
                                data(fds), "--semantics", semantics};
  args.insert(args.end(), extra.begin(), extra.end());
  return run(args);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fdlab_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

class WorldCapEnv : public ::testing::Test {
 protected:
  void TearDown() override { unsetenv("FDLAB_WORLD_CAP"); }
};

}  // namespace

TEST(CliCheck, CorpusVerdicts) {
  struct Case {
    const char* table;
    const char* fds;
    const char* semantics;
    int code;
  };
  const Case cases[] = {
      {"vague_chain.vtab", "chain.fds", "weak", 0},
      {"vague_chain.vtab", "a_c.fds", "weak", 1},
      {"vague_chain.vtab", "chain.fds", "seamless", 1},
      {"vague_shared_b.vtab", "ab_cb.fds", "rm", 0},
      {"vague_shared_b.vtab", "ab_cb.fds", "seamless", 1},
      {"vague_shared_b_wide.vtab", "ab_cb.fds", "rm", 0},
      {"correlated_pair.dtab", "correlated_pair.fds", "pfd", 0},
      {"correlated_pair.dtab", "correlated_pair.fds", "seamless", 1},
      {"augmentation.dtab", "augmentation_ac.fds", "pfd", 0},
      {"augmentation.dtab", "augmentation_abcb.fds", "pfd", 1},
      {"ssn_name.dtab", "ssn_name.fds", "pfd", 0},
      {"joe_jack.vtab", "dept_mgr.fds", "strong", 1},
      {"single_tuple.dtab", "a_b.fds", "pfd", 0},
      {"single_tuple.dtab", "a_b.fds", "vertical", 1},
      {"matching_reduction.vtab", "matching_reduction.fds", "seamless", 0},
  };
  for (const auto& c : cases) {
    const auto r = check(c.table, c.fds, c.semantics);
    EXPECT_EQ(r.code, c.code) << c.table << " " << c.fds << " " << c.semantics << "\n" << r.err;
  }
}

TEST(CliCheck, TextReportNamesTheViolation) {
  const auto r = check("augmentation.dtab", "augmentation_abcb.fds", "pfd");
  EXPECT_NE(r.out.find("fd A B -> B C: violated (pair, tuples 0 and 1, binding (a,b))"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("satisfied: false"), std::string::npos);
}

TEST(CliCheck, JsonReport) {
  const auto r = check("joe_jack.vtab", "dept_mgr.fds", "strong", {"--format", "json"});
  ASSERT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["semantics"], "strong");
  EXPECT_EQ(j["satisfied"], false);
  ASSERT_EQ(j["verdicts"].size(), 1u);
  EXPECT_EQ(j["verdicts"][0]["violation"]["binding"], nlohmann::json({"Engineering"}));
  EXPECT_FALSE(j.contains("elapsed_ms"));
  const auto timed =
      check("joe_jack.vtab", "dept_mgr.fds", "strong", {"--format", "json", "--timing"});
  EXPECT_TRUE(nlohmann::json::parse(timed.out).contains("elapsed_ms"));
}

TEST(CliCheck, SeamlessWitness) {
  const auto r =
      check("matching_reduction.vtab", "matching_reduction.fds", "seamless", {"--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["witness"],
            nlohmann::json::parse(R"([["a","2","B","t1"],["b","1","A","t2"],["c","3","C","t3"]])"));
}

TEST(CliCheck, RmMinVariant) {
  EXPECT_EQ(check("vague_shared_b_wide.vtab", "ab_cb.fds", "rm", {"--resemblance", "min"}).code, 0);
  EXPECT_EQ(check("vague_shared_b.vtab", "ab_cb.fds", "rm", {"--resemblance", "min"}).code, 1);
}

TEST(CliErrors, UsageParseAndSchemaErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(check("vague_chain.vtab", "chain.fds", "fuzzy").code, 2);
  EXPECT_EQ(run({"check", "--table", data("missing.vtab"), "--fds", data("chain.fds")}).code, 2);
  EXPECT_EQ(check("vague_chain.vtab", "ssn_name.fds", "pfd").code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliErrors, ValuateRejectsDisjunctiveTables) {
  EXPECT_EQ(run({"valuate", "--table", data("correlated_pair.dtab"), "--fds",
                 data("correlated_pair.fds")})
                .code,
            2);
}

TEST_F(WorldCapEnv, CapOverride) {
  setenv("FDLAB_WORLD_CAP", "1", 1);
  EXPECT_EQ(run({"worlds", "--table", data("single_tuple.dtab")}).code, 2);
  setenv("FDLAB_WORLD_CAP", "not-a-number", 1);
  EXPECT_EQ(run({"worlds", "--table", data("single_tuple.dtab")}).code, 2);
  setenv("FDLAB_WORLD_CAP", "1000", 1);
  EXPECT_EQ(run({"worlds", "--table", data("single_tuple.dtab")}).code, 0);
}

TEST(CliValuate, WorkedExample) {
  const auto r =
      run({"valuate", "--table", data("valuation_example.vtab"), "--fds", data("ab_cb.fds")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(fdlab::parse_table(r.out), fdlab::parse_table("A,B,C\na1,b1,c1\na1,b1,c2\na2,b1,c2\n"));
}

TEST(CliValuate, PfdFailureExitsOne) {
  const auto r = run({"valuate", "--table", data("vague_shared_b.vtab"), "--fds", data("a_b.fds")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("A -> B"), std::string::npos);
}

TEST(CliWorlds, LimitAndJson) {
  const auto r = run({"worlds", "--table", data("single_tuple.dtab"), "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["truncated"], false);
  EXPECT_EQ(j["count"], j["worlds"].size());
  const auto one = run({"worlds", "--table", data("single_tuple.dtab"), "--limit", "1"});
  EXPECT_NE(one.out.find("# worlds: 1 (truncated)"), std::string::npos) << one.out;
}

TEST(CliClosure, Text) {
  const auto r = run({"closure", "--fds", data("chain.fds"), "--attrs", "A"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "A B C\n");
  EXPECT_EQ(run({"closure", "--fds", data("chain.fds"), "--attrs", "Q", "--table",
                 data("vague_chain.vtab")})
                .code,
            2);
}

TEST_F(ScratchDir, Gen3dmWritesTheReduction) {
  const auto r = run({"gen3dm", "--instance", data("matching.3dm"), "--out-table", path("r.vtab"),
                      "--out-fds", path("r.fds")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("r.vtab")), slurp(data("matching_reduction.vtab")));
  EXPECT_EQ(slurp(path("r.fds")), slurp(data("matching_reduction.fds")));
  EXPECT_EQ(
      run({"check", "--table", path("r.vtab"), "--fds", path("r.fds"), "--semantics", "seamless"})
          .code,
      0);
}

TEST_F(ScratchDir, ValuateOutRoundTrips) {
  ASSERT_EQ(run({"valuate", "--table", data("valuation_example.vtab"), "--fds", data("ab_cb.fds"),
                 "--seed", "3", "--out", path("w.tab")})
                .code,
            0);
  EXPECT_EQ(run({"check", "--table", path("w.tab"), "--fds", data("ab_cb.fds"), "--semantics",
                 "standard"})
                .code,
            0);
}

TEST_F(ScratchDir, ParseErrorNamesTheFileAndLine) {
  std::ofstream(path("bad.vtab")) << "A,B\na,{}\n";
  const auto r = run({"check", "--table", path("bad.vtab"), "--fds", data("a_b.fds")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.vtab"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bad.vtab: line 2, column 3: "), std::string::npos) << r.err;
  EXPECT_EQ(r.err.find("line 2", r.err.find("line 2") + 1), std::string::npos) << r.err;
}

TEST(CliBench, ReportsRejections) {
  const auto ok = run({"bench", "--table", data("correlated_pair.dtab"), "--fds",
                       data("correlated_pair.fds"), "--format", "json"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["rejected"], 0);
  EXPECT_EQ(run({"bench", "--table", data("vague_shared_b.vtab"), "--fds", data("a_b.fds")}).code,
            1);
}

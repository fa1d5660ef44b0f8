#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "omd/io/json_io.hpp"

namespace fs = std::filesystem;
using omd::io::Json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("omd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return omd::cli::run(args, out_, err_);
  }
  Json report() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kLottery = R"({"n":2,"a":["1","1"],"d":["1","2"],"p":["1/2","1/2"]})";

}  // namespace

TEST_F(Cli, SolveEmitsBundleAndLottery) {
  ASSERT_EQ(run({"solve", file("lot.json", kLottery)}), 0) << err_.str();
  const Json r = report()["result"];
  EXPECT_EQ(r["revenue"], "21/8");
  const Json& menu = r["mechanism"]["menu"];
  EXPECT_EQ(menu[3]["price"], "4/1");
  EXPECT_EQ(menu[1]["price"], "5/2");
  EXPECT_EQ(menu[1]["q"], Json::array({"1/1", "1/2"}));
  EXPECT_EQ(r["verification"]["violations"].size(), 0u);
  EXPECT_EQ(r["verification"]["incentive_rows"], 12);
}

TEST_F(Cli, SolveWithOracle) {
  const std::string in = file("b.json", R"({"n":2,"a":["1/2","3/2"],"d":["1","2"],"p":["1/2","1/2"]})");
  ASSERT_EQ(run({"solve", in, "--oracle"}), 0) << err_.str();
  EXPECT_EQ(report()["result"]["revenue"], "41/16");
  EXPECT_EQ(report()["result"]["oracle_agrees"], true);
}

TEST_F(Cli, ZeroLowValues) {
  const std::string in = file("z.json", R"({"n":2,"a":["0","0"],"d":["1","1"],"p":["1/2","1/2"]})");
  EXPECT_EQ(run({"solve", in}), 2);
  ASSERT_EQ(run({"solve", in, "--oracle-only"}), 0);
  EXPECT_EQ(report()["result"]["revenue"], "1/1");
}

TEST_F(Cli, KappaFlagAndDumps) {
  const std::string in = file("lot.json", kLottery);
  ASSERT_EQ(run({"solve", in, "--kappa", "7/3", "--dump-lattice", path("lat.txt"), "--json-out",
                 path("m.json"), "--oracle", "--dump-lp", path("lp.txt")}),
            0)
      << err_.str();
  EXPECT_EQ(report()["result"]["kappa"], "7/3");
  EXPECT_TRUE(fs::exists(path("lat.txt")));
  EXPECT_TRUE(fs::exists(path("lp.txt")));
  // the emitted mechanism re-verifies
  ASSERT_EQ(run({"verify", in, path("m.json")}), 0) << err_.str();
  EXPECT_EQ(report()["result"]["revenue"], "21/8");
}

TEST_F(Cli, VerifyRejectsTamperedMechanism) {
  const std::string in = file("lot.json", kLottery);
  ASSERT_EQ(run({"solve", in, "--json-out", path("m.json")}), 0);
  Json mech = Json::parse(std::ifstream(path("m.json")));
  mech["menu"][1]["price"] = "1/1";
  mech["menu"][1]["u"] = "5/2";
  file("bad.json", mech.dump());
  EXPECT_EQ(run({"verify", in, path("bad.json")}), 3);
  EXPECT_FALSE(report()["result"]["verification"]["violations"].empty());
}

TEST_F(Cli, MultiplePositiveNodesNamed) {
  // kappa = 1 gives x = (12, 1/2), B = 71/10, so {1} alone clears the offset
  const std::string in = file("mp.json", R"({"n":2,"a":["3","1/10"],"d":["1/2","1"],"p":["1/2","1/5"]})");
  EXPECT_EQ(run({"solve", in}), 2);
  EXPECT_NE(err_.str().find("{1}"), std::string::npos) << err_.str();
}

TEST_F(Cli, ReduceLexRank) {
  ASSERT_EQ(run({"reduce", "lexrank", file("lr.json", R"({"C":[1,2],"S":[1],"k":1})")}), 0);
  EXPECT_EQ(report()["result"]["decision"], true);
  EXPECT_EQ(report()["result"]["probe"], "1/1");
  EXPECT_EQ(report()["result"]["T_star"], Json::array({2}));
  ASSERT_EQ(run({"reduce", "lexrank", file("no.json", R"({"C":[1,2],"S":[2],"k":1})")}), 0);
  EXPECT_EQ(report()["result"]["decision"], false);
  EXPECT_EQ(run({"reduce", "lexrank", file("e.json", R"({"C":[1,2],"S":[],"k":1})")}), 1);
}

TEST_F(Cli, ReduceSubsetSum) {
  ASSERT_EQ(run({"reduce", "subsetsum", file("ss.json", R"({"W":[1,2],"T":2})")}), 0);
  EXPECT_EQ(report()["result"]["count"], 3);
  EXPECT_EQ(report()["result"]["count_direct"], 3);
}

TEST_F(Cli, Examples) {
  EXPECT_EQ(run({"examples"}), 0);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out_.str().find("9/4"), std::string::npos);
}

TEST_F(Cli, SampleIsSeeded) {
  const std::string in = file("lot.json", kLottery);
  ASSERT_EQ(run({"sample", in, "--type", "1", "--seed", "9", "--count", "2000"}), 0);
  const Json first = report()["result"];
  ASSERT_EQ(run({"sample", in, "--type", "1", "--seed", "9", "--count", "2000"}), 0);
  EXPECT_EQ(report()["result"], first);
  EXPECT_EQ(first["item_counts"][0], 2000);
  EXPECT_EQ(run({"sample", in, "--type", "5"}), 1);
}

TEST_F(Cli, Budgeted) {
  ASSERT_EQ(run({"budgeted", file("b.json", R"({"x":[1,2],"budget":2,"eps":"1/5"})"), "--oracle"}),
            0);
  EXPECT_EQ(report()["result"]["revenue"], "14/5");
  EXPECT_EQ(report()["result"]["oracle_revenue"], "14/5");
  EXPECT_EQ(run({"budgeted", file("bad.json", R"({"x":[1,2],"budget":2,"eps":"1/2"})")}), 2);
}

TEST_F(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"solve", path("missing.json")}), 1);
  EXPECT_EQ(run({"solve", file("junk.json", "{not json")}), 1);
  EXPECT_EQ(run({"solve", file("short.json", R"({"n":2,"a":["1"],"d":["1","1"],"p":["1/2","1/2"]})")}), 1);
  EXPECT_NE(err_.str().find("\"a\""), std::string::npos);
}

TEST_F(Cli, ReportIsDeterministicAndDigested) {
  const std::string in = file("lot.json", kLottery);
  ASSERT_EQ(run({"solve", in}), 0);
  const std::string first = out_.str();
  ASSERT_EQ(run({"solve", in}), 0);
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(report()["input_digest"], omd::cli::fnv1a_hex(kLottery));
  EXPECT_EQ(omd::cli::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(omd::cli::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

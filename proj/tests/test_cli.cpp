#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dset/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = DSET_FIXTURE_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dset::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dset_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"construct", "no-such-family"}).code, 2);
  EXPECT_EQ(run({"construct"}).code, 2);
  EXPECT_EQ(run({"verify", "--design", (kFixtures / "missing.design.txt").string()}).code, 2);
  EXPECT_EQ(run({"transfer", "dillon-forward"}).code, 2);
  EXPECT_EQ(run({"export", "--design", (kFixtures / "ds16_6_2.design.txt").string(), "--format", "svg"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("construct"), std::string::npos);
}

TEST(Cli, ShippedFixtureVerifies) {
  Result r = run({"verify", "--design", (kFixtures / "ds16_6_2.design.txt").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "DS(16,6,2) OK, reversible: true\n");
}

TEST(Cli, CorruptedMemberListExitsThreeWithWitness) {
  Result r = run({"verify", "--design", (kFixtures / "ds16_6_2_corrupt.design.txt").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("ParameterMismatch"), std::string::npos);
  EXPECT_NE(r.err.find("(1,1,0) expected 2 got 3"), std::string::npos);
}

TEST(Cli, McFarlandOddParameterError) {
  Result r = run({"construct", "mcfarland-odd", "--q", "3", "--s", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("r+1 = 5 is not twice an odd prime"), std::string::npos);
}

TEST(Cli, FamilyVerifyAndSrg) {
  Result r = run({"verify", "denniston-even", "--m", "2", "--r", "1", "--srg"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PDS(64,18,2,6) OK"), std::string::npos);
  EXPECT_NE(r.out.find("srg "), std::string::npos);
  Result ds = run({"verify", "spence", "--d", "1", "--srg"});
  EXPECT_EQ(ds.code, 0);
  EXPECT_NE(ds.out.find("srg n/a"), std::string::npos);
}

TEST(Cli, TransferReportsForFamilies) {
  Result ok = run({"transfer", "spence", "--d", "1"});
  EXPECT_EQ(ok.code, 0);
  for (const char* s : {"cond_i true", "cond_ii true", "cond_iii true", "abelian no", "order 351"})
    EXPECT_NE(ok.out.find(s), std::string::npos) << s;
  Result degenerate = run({"transfer", "pgroup-multiplier", "--p", "2", "--n", "2", "--s", "3"});
  EXPECT_EQ(degenerate.code, 3);
  EXPECT_NE(degenerate.out.find("cond_i false"), std::string::npos);
  Result claim = run({"transfer", "denniston-gr4", "--t", "3", "--k", "3"});
  EXPECT_EQ(claim.code, 3);
  EXPECT_NE(claim.out.find("split by an elementary abelian complement C2^k: false"), std::string::npos);
}

TEST_F(CliFiles, ConstructRoundTripIsByteIdentical) {
  Result a = run({"construct", "spence", "--d", "1", "--out", at("a/spence")});
  ASSERT_EQ(a.code, 0);
  for (const char* ext : {".group.txt", ".design.txt", ".instance.txt", ".manifest.txt"})
    EXPECT_TRUE(fs::exists(at(std::string("a/spence") + ext))) << ext;
  Result b = run({"construct", "spence", "--d", "1", "--out", at("b/spence")});
  ASSERT_EQ(b.code, 0);
  for (const char* ext : {".group.txt", ".design.txt", ".instance.txt"})
    EXPECT_EQ(slurp(at(std::string("a/spence") + ext)), slurp(at(std::string("b/spence") + ext))) << ext;
  Result v = run({"verify", "--design", at("a/spence.design.txt")});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "DS(351,126,45) OK, reversible: false\n");
  Result t = run({"transfer", "--instance", at("a/spence.instance.txt"), "--out", at("a/out")});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("cond_iii true"), std::string::npos);
  Result tv = run({"verify", "--design", at("a/out.design.txt")});
  EXPECT_EQ(tv.code, 0);
  EXPECT_EQ(tv.out, "DS(351,126,45) OK, reversible: false\n");
}

TEST_F(CliFiles, Gr4ManifestRecordsTheLift) {
  Result r = run({"construct", "denniston-gr4", "--t", "3", "--k", "3", "--out", at("gr4")});
  ASSERT_EQ(r.code, 0);
  const std::string m = slurp(at("gr4.manifest.txt"));
  EXPECT_NE(m.find("Phi = x^3 + 2x^2 + x - 1"), std::string::npos);
  EXPECT_NE(m.find("PDS(512,196,60,84) OK"), std::string::npos);
}

TEST_F(CliFiles, IdentityTransferLeavesTheDesignUnchanged) {
  Result r = run({"transfer", "--design", (kFixtures / "ds16_6_2.design.txt").string(), "--out", at("id")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cond_iii true"), std::string::npos);
  Result v = run({"verify", "--design", at("id.design.txt")});
  EXPECT_EQ(v.out, "DS(16,6,2) OK, reversible: true\n");
}

TEST_F(CliFiles, HandEditedInstanceFailsWithWitness) {
  // Dropping the generator (1,b) leaves a closure of order 8.
  std::string text = slurp(kFixtures / "ds16_6_2.instance.txt");
  const std::string drop = "gen - : 4\n";
  ASSERT_NE(text.find(drop), std::string::npos);
  text.erase(text.find(drop), drop.size());
  text.replace(text.find("gens 3"), 6, "gens 2");
  for (const char* f : {"ds16_6_2.group.txt", "ds16_6_2.design.txt"}) fs::copy_file(kFixtures / f, dir_ / f);
  std::ofstream(at("bad.instance.txt")) << text;
  Result r = run({"transfer", "--instance", at("bad.instance.txt")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("cond_i false"), std::string::npos);
  EXPECT_NE(r.out.find("|closure| = 8"), std::string::npos);
}

TEST_F(CliFiles, ExportedGraphIsEighteenRegular) {
  Result r = run({"export", "denniston-even", "--m", "2", "--r", "1", "--format", "edges", "--out", at("g.edges")});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(at("g.edges"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# cayley graph vertices 64", 0), 0u);
  std::map<int, int> degree;
  int a, b;
  while (in >> a >> b) {
    ++degree[a];
    ++degree[b];
  }
  ASSERT_EQ(degree.size(), 64u);
  for (auto [v, d] : degree) EXPECT_EQ(d, 18) << v;
  Result dot = run({"export", "--design", (kFixtures / "ds16_6_2.design.txt").string(), "--format", "dot"});
  EXPECT_EQ(dot.code, 0);
  EXPECT_NE(dot.out.find("graph"), std::string::npos);
}

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string bin() {
  const char* b = std::getenv("TGQ_BIN");
  return b ? b : "./tgq";
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "tgq_cli_" + name; }

// Runs the CLI with stdout to a file; returns the exit status.
int run(const std::string& args, const std::string& out = "/dev/null") {
  const int s = std::system((bin() + " " + args + " >" + out + " 2>/dev/null").c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ValidEggPasses) {
  const auto egg = tmp("e3.json");
  ASSERT_EQ(run("egg from-ovoid --q 3 --emit " + egg), 0);
  EXPECT_EQ(run("egg validate --egg " + egg), 0);
  EXPECT_EQ(run("gq build-tq --egg " + egg + " --full"), 0);
}

TEST(Cli, CollinearTripleIsAFinding) {
  const auto egg = tmp("e3b.json");
  ASSERT_EQ(run("egg from-ovoid --q 3 --emit " + egg), 0);
  json j = json::parse(slurp(egg));
  // Replace element 2 by the third point on the line through elements 0 and 1.
  auto& els = j["elements"];
  for (std::size_t c = 0; c < 4; ++c)
    els[2][0][c] = (els[0][0][c].get<int>() + els[1][0][c].get<int>()) % 3;
  std::ofstream(egg) << j.dump();
  const auto out = tmp("bad_report.json");
  EXPECT_EQ(run("egg validate --json --egg " + egg, out), 1);
  const json r = json::parse(slurp(out));
  EXPECT_FALSE(r["pass"].get<bool>());
  EXPECT_EQ(r["checks"][0]["witnesses"]["error"], "TripleSpanFailure");
  EXPECT_EQ(r["checks"][0]["witnesses"]["witness"]["triple"], json({0, 1, 2}));
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("egg validate --egg " + tmp("does_not_exist.json")), 2);
  EXPECT_EQ(run("suite bogus"), 2);
  EXPECT_EQ(run("egg from-ovoid --q 6"), 2);
  EXPECT_EQ(run("egg"), 2);
  EXPECT_EQ(run("--workers 0 suite smoke"), 2);
  const auto junk = tmp("junk.json");
  std::ofstream(junk) << "{\"field\": 3";
  EXPECT_EQ(run("flock validate --flock " + junk), 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help"), 0); }

TEST(Cli, ReportsAreByteIdentical) {
  const auto a = tmp("lemmas_a.json"), b = tmp("lemmas_b.json");
  ASSERT_EQ(run("suite lemmas --q 3 --n 2 --seed 0 --out " + a), 0);
  ASSERT_EQ(run("suite lemmas --q 3 --n 2 --seed 0 --out " + b), 0);
  const auto sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
  const json r = json::parse(sa);
  EXPECT_EQ(r["tool"], "tgq");
  EXPECT_TRUE(r["pass"].get<bool>());
  EXPECT_TRUE(r["field"].contains("poly"));
  EXPECT_FALSE(r["extra"]["phi"].is_null());
}

TEST(Cli, KantorKnuthAtNine) {
  const auto out = tmp("kk9.json"), fl = tmp("kk9_flock.json");
  // Code 4 is a nonsquare of GF(9), code 3 a square.
  EXPECT_EQ(run("flock kk --q 9 --sigma 1 --m 4 --json --emit " + fl, out), 0);
  const json r = json::parse(slurp(out));
  EXPECT_TRUE(r["checks"][1]["counts"]["semifield"].get<bool>());
  EXPECT_FALSE(r["checks"][1]["counts"]["linear"].get<bool>());
  EXPECT_EQ(run("flock classify --flock " + fl), 0);
  EXPECT_EQ(run("flock kk --q 9 --sigma 1 --m 3"), 1);
}

TEST(Cli, FlockGQ) {
  const auto fl = tmp("f3.json");
  ASSERT_EQ(run("flock kk --q 3 --sigma 0 --m 2 --emit " + fl), 0);
  EXPECT_EQ(run("flock gq-build --flock " + fl), 0);
}

TEST(Cli, StructuralCommands) {
  const auto egg = tmp("e23.json");
  ASSERT_EQ(run("egg from-ovoid --q 3 --n 2 --emit " + egg), 0);
  for (const char* c : {"conic", "family", "eta", "pi0set", "frame", "alpha", "goodness"})
    EXPECT_EQ(run(std::string("sec6 ") + c + " --egg " + egg), 0) << c;
  EXPECT_EQ(run("sec6 alpha --random-phi --seed 7 --egg " + egg), 0);
  EXPECT_EQ(run("sec6 conic --i 1 --j 2 --k 3 --egg " + egg), 1);
  EXPECT_EQ(run("sec6 conic --i 99 --egg " + egg), 2);
}

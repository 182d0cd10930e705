#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

using namespace edgeconn;
using cli::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "edgeconn");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "edgeconn_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

const std::string k3 = SAMPLES_DIR "/k3.txt";
const std::string c4 = SAMPLES_DIR "/c4.txt";

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"mincut"}).code, 1);
  EXPECT_EQ(run({"mincut", k3, "--no-such-flag"}).code, 1);
  EXPECT_EQ(run({"bench", "--family", "torus"}).code, 1);
  EXPECT_EQ(run({"pagerank", k3, "--source", "9"}).code, 1);
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run({"mincut", write("bad.txt", "1 2\n3\n")}).code, 2);
  EXPECT_EQ(run({"mincut", scratch("missing.txt").string()}).code, 2);
  Outcome r = run({"mincut", k3, "--profile", write("bad.toml", "nonsense = 3\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MincutJson) {
  Outcome r = run({"mincut", c4, "--json"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "mincut");
  EXPECT_EQ(j["lambda"], 2);
  EXPECT_EQ(j["boundary_edges"].size(), 2u);
  EXPECT_EQ(j["config"]["profile"], "paper");
}

TEST(Cli, MincutText) {
  Outcome r = run({"mincut", SAMPLES_DIR "/p3.dimacs"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lambda 1"), std::string::npos);
}

TEST(Cli, FlagsBeatConfigFile) {
  std::string cfg = write("c.toml", "profile = \"scaled\"\nphi0 = 0.3\n");
  json a = json::parse(run({"kernel", k3, "--profile", cfg, "--stats"}).out);
  EXPECT_EQ(a["config"]["profile"], "scaled");
  EXPECT_DOUBLE_EQ(a["constants"]["phi0"].get<double>(), 0.3);
  json b = json::parse(run({"kernel", k3, "--profile", cfg, "--phi0", "0.4", "--stats"}).out);
  EXPECT_DOUBLE_EQ(b["constants"]["phi0"].get<double>(), 0.4);
}

TEST(Cli, KernelStats) {
  std::string path = write("barbell.txt", to_edge_list(barbell(12, 2)));
  Outcome r = run({"kernel", path, "--profile", "scaled", "--stats"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_FALSE(j["fallback"].get<bool>());
  EXPECT_LE(j["kernel"]["vertices"].get<int>(), 10);
  EXPECT_GE(j["rounds"].size(), 1u);
  EXPECT_TRUE(j["ledger"]["within_bound"].get<bool>());
}

TEST(Cli, CertifyCycle) {
  json j = json::parse(run({"certify", c4, "--profile", "scaled"}).out);
  EXPECT_EQ(j["verdict"], "cut");
  EXPECT_LE(j["conductance"].get<double>(), j["bound"].get<double>());
  EXPECT_EQ(run({"certify", c4}).code, 1);
}

TEST(Cli, PagerankHandExample) {
  Outcome r = run({"pagerank", k3, "--source", "1", "--alpha", "0.5", "--eps", "0.4"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  std::vector<double> p = j["settled"], q = j["residual"];
  std::vector<double> p_want{0.4, 0, 0}, q_want{0.4, 0.1, 0.1};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(p[i], p_want[i], 1e-12);
    EXPECT_NEAR(q[i], q_want[i], 1e-12);
  }
}

TEST(Cli, PagerankSetAndSweep) {
  std::string g = write("bb.txt", to_edge_list(barbell(6, 1)));
  std::string set = write("set.txt", "0 1 2\n");
  Outcome r = run({"pagerank", g, "--set", set, "--alpha", "0.1", "--eps", "1e-5", "--sweep"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  json s = json::parse(second);
  EXPECT_EQ(s["boundary"], 1);
  EXPECT_EQ(s["side"].size(), 6u);
}

TEST(Cli, BenchIsDeterministic) {
  std::vector<std::string> args{"bench", "--family", "planted-cut", "--size", "8", "--bridges", "2",
                                "--count",  "3", "--profile", "scaled", "--output", "json"};
  Outcome a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  json j = json::parse(a.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["runs"].size(), 3u);
  for (auto& row : j["runs"]) EXPECT_EQ(row["lambda"], std::min<int>(2, row["min_degree"].get<int>()));
  Outcome csv = run({"bench", "--family", "barbell", "--size", "10", "--bridges", "3"});
  EXPECT_NE(csv.out.find("\nbarbell,10,3,"), std::string::npos);
}

TEST(Cli, Verify) {
  auto dir = scratch("verify_ok");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "k4.txt") << "# lambda 3\n" << to_edge_list(complete_graph(4));
  std::ofstream(dir / "c5.dimacs") << "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
  Outcome ok = run({"verify", dir.string()});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(json::parse(ok.out)["ok"].get<bool>());
  std::ofstream(dir / "wrong.txt") << "# lambda 1\n" << to_edge_list(cycle_graph(5));
  Outcome bad = run({"verify", dir.string()});
  EXPECT_EQ(bad.code, 3);
  std::filesystem::remove(dir / "wrong.txt");
}

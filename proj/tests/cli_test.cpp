#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "msp/instance_io.hpp"

using namespace msp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return (fs::path(MSP_SOURCE_DIR) / "data" / name).string(); }

}  // namespace

TEST(Cli, FnThreePipelineSaysNo) {
  const auto f = cli({"gen", "fn", "3"});
  ASSERT_EQ(f.code, 0);
  const auto g = cli({"reduce", "-"}, f.out);
  ASSERT_EQ(g.code, 0) << g.err;
  const auto s = cli({"solve", "-"}, g.out);
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out, "no\n");
  EXPECT_EQ(cli({"oracle", "-"}, g.out).out, "no\n");
  EXPECT_EQ(cli({"validate", "-"}, g.out).out, "ok\n");
}

TEST(Cli, ChainSaysYes) {
  EXPECT_EQ(cli({"solve", data("chain.msp")}).out, "yes\n");
  EXPECT_EQ(cli({"oracle", data("chain.msp")}).out, "yes\n");
  EXPECT_EQ(cli({"solve", data("f3.cnf")}).out, "no\n");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"solve"}).code, 1);
  EXPECT_EQ(cli({"minimize", data("f3.cnf"), "--predicate", "maybe"}).code, 1);
  const auto missing = cli({"solve", "/nonexistent/file.msp"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);
  EXPECT_EQ(cli({"solve", "-"}, "p cnf 1 1\n1 x 0\n").code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ValidateReportsViolations) {
  const auto plain = cli({"reduce", "--no-gadgets", data("f3.cnf")});
  ASSERT_EQ(plain.code, 0);
  const auto v = cli({"validate", "-"}, plain.out);
  EXPECT_EQ(v.code, 4);
  EXPECT_NE(v.out.find("2msp.2"), std::string::npos);
  EXPECT_EQ(cli({"solve", "-"}, plain.out).code, 1);
  EXPECT_EQ(cli({"solve", "--permissive", "-"}, plain.out).code, 0);
}

TEST(Cli, SolveTraceAndStats) {
  const auto s = cli({"solve", "--trace", "--stats", data("f3.cnf")});
  EXPECT_EQ(s.out, "no\n");
  EXPECT_NE(s.err.find(R"("kind":"psi-prune")"), std::string::npos);
  EXPECT_NE(s.err.find(R"("sweep_order")"), std::string::npos);
}

TEST(Cli, GenIsSeeded) {
  const auto a = cli({"gen", "msp", "7", "3", "0.8", "--seed", "12"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, cli({"gen", "msp", "7", "3", "0.8", "--seed", "12"}).out);
  EXPECT_NE(a.out, cli({"gen", "msp", "7", "3", "0.8", "--seed", "13"}).out);
  EXPECT_EQ(cli({"validate", "-"}, a.out).code, 0);
  EXPECT_EQ(cli({"gen", "ksat", "5", "9", "--seed", "4"}).out, cli({"gen", "ksat", "5", "9", "--seed", "4"}).out);
  EXPECT_NE(cli({"gen", "php", "4", "--split"}).out.find("p cnf 25 "), std::string::npos);
}

TEST(Cli, PreprocessKeepsStructure) {
  const auto p = cli({"preprocess", data("chain.msp")});
  ASSERT_EQ(p.code, 0);
  const auto g = deserialize_instance(p.out).doc.graph;
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_EQ(g.label(VertexId{1}).count(), 1u);
}

TEST(Cli, FuzzAndReport) {
  const auto dir = fs::temp_directory_path() / "zhmsp-cli-fuzz";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "c.cfg") << R"({"seed": 3, "corpus": [{"kind": "fn", "n": [2, 3]}, {"kind": "msp", "count": 4}]})";
  const auto f = cli({"fuzz", (dir / "c.cfg").string(), "--output", (dir / "out").string(), "--workers", "2"});
  EXPECT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("necessity-violation"), std::string::npos);
  const auto r = cli({"report", (dir / "out").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find("zh time")), f.out.substr(0, f.out.find("zh time")));
  EXPECT_EQ(cli({"report", (dir / "missing").string()}).code, 1);
  std::ofstream(dir / "bad.cfg") << R"({"corpus": [], "extra": 1})";
  EXPECT_EQ(cli({"fuzz", (dir / "bad.cfg").string()}).code, 1);
}

TEST(Cli, MinimizeWritesASmallerFormula) {
  const auto m = cli({"minimize", data("f3.cnf"), "--predicate", "zh-no"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("p cnf"), std::string::npos);
  EXPECT_EQ(cli({"solve", "-"}, m.out).out, "no\n");
  EXPECT_EQ(cli({"minimize", data("chain.msp"), "--predicate", "zh-no"}).code, 1);
}

#include <gtest/gtest.h>

#include <sstream>

#include "commands.hpp"
#include "support.hpp"

using namespace trustgrow;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const fs::path& dir, std::vector<std::string> args) {
  args.insert(args.begin(), {"trustgrow", "--out-dir", dir.string()});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string path(const fs::path& dir, const std::string& name) { return (dir / name).string(); }

void write_k12_inputs(const fs::path& dir) {
  write_file(path(dir, "k12.txt"), format_graph_text(support::complete(12)));
  write_file(path(dir, "a8.txt"), "0 1 2 3 4 5 6 7\n");
  write_file(path(dir, "add4.txt"), "8 9 10 11\n");
  write_file(path(dir, "policy.json"), R"({"mode":"conductance","alpha":"3/4","beta":"1/5","gamma_e":"1/10","d":11})");
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  const auto dir = support::scratch_dir("cli_usage");
  EXPECT_EQ(run_cli(dir, {}).code, 2);
  EXPECT_EQ(run_cli(dir, {"gate"}).code, 2);
  EXPECT_EQ(run_cli(dir, {"analyze", path(dir, "missing.txt")}).code, 2);
  EXPECT_EQ(run_cli(dir, {"frobnicate"}).code, 2);
}

TEST(Cli, AnalyzeReportsExactValues) {
  const auto dir = support::scratch_dir("cli_analyze");
  write_file(path(dir, "k4.txt"), format_graph_text(support::complete(4)));
  const auto r = run_cli(dir, {"analyze", path(dir, "k4.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("phi_e: 2/3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("phi_v: 1"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "analyze.json"));
  EXPECT_TRUE(fs::exists(dir / "analyze.manifest.json"));
}

TEST(Cli, AnalyzeBeyondTheLimitIsAScaleError) {
  const auto dir = support::scratch_dir("cli_scale");
  write_file(path(dir, "c40.txt"), format_graph_text(support::cycle(40)));
  EXPECT_EQ(run_cli(dir, {"analyze", path(dir, "c40.txt")}).code, 3);
  EXPECT_EQ(run_cli(dir, {"analyze", path(dir, "c40.txt"), "--spectral"}).code, 0);
}

TEST(Cli, GateAdmitsAndRejects) {
  const auto dir = support::scratch_dir("cli_gate");
  write_k12_inputs(dir);
  const auto ok = run_cli(dir, {"gate", path(dir, "k12.txt"), path(dir, "a8.txt"), path(dir, "add4.txt"),
                                path(dir, "policy.json")});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("verdict: admitted"), std::string::npos);
  const auto verdict = detail::parse_json(read_file(path(dir, "verdict.json")), "verdict");
  EXPECT_TRUE(verdict.at("admitted").get<bool>());

  // Four newcomers exceed the growth cap of 3/5 * 6.
  write_file(path(dir, "a6.txt"), "0 1 2 3 4 5\n");
  const auto over = run_cli(dir, {"gate", path(dir, "k12.txt"), path(dir, "a6.txt"), path(dir, "add4.txt"),
                                  path(dir, "policy.json")});
  EXPECT_EQ(over.code, 1);
  EXPECT_NE(over.out.find("binding: growth_cap"), std::string::npos) << over.out;
}

TEST(Cli, SweepWritesCsv) {
  const auto dir = support::scratch_dir("cli_sweep");
  const auto r = run_cli(dir, {"sweep", "--mode", "conductance", "--phi", "2/5", "--beta", "1/5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("conductance,2/5,1/5,1,1/10,0.1000"), std::string::npos) << r.out;
  EXPECT_EQ(read_file(path(dir, "sweep.csv")), r.out);
  EXPECT_EQ(run_cli(dir, {"sweep", "--phi", "1", "--beta", "3/5"}).code, 2);
}

TEST(Cli, GrowThenAuditReplays) {
  const auto dir = support::scratch_dir("cli_grow");
  write_k12_inputs(dir);
  IdentityLedger ledger(12);
  write_file(path(dir, "ledger.json"), ledger_to_json(ledger).dump());
  const auto trace = path(dir, "trace.ndjson");
  const auto g = run_cli(dir, {"grow", "--graph", path(dir, "k12.txt"), "--policy", path(dir, "policy.json"), "--trace",
                               trace, "--community", path(dir, "a8.txt"), "--steps", "3"});
  EXPECT_EQ(g.code, 0) << g.out << g.err;
  const auto t = read_trace(trace);
  EXPECT_EQ(t.history.back().size(), 12u);

  // Growing again finds nothing left to add.
  const auto again = run_cli(dir, {"grow", "--graph", path(dir, "k12.txt"), "--policy", path(dir, "policy.json"),
                                   "--trace", trace});
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(read_trace(trace).history.size(), t.history.size());

  const auto a = run_cli(dir, {"audit", trace, path(dir, "ledger.json"), path(dir, "policy.json")});
  EXPECT_EQ(a.code, 0) << a.out << a.err;
  EXPECT_NE(a.out.find("beta <= target at all steps"), std::string::npos);
  EXPECT_NE(a.out.find("metrics replay: identical"), std::string::npos);

  // Labels that make the newcomers corrupt put beta at 1/3 > 1/5.
  for (VertexId v = 8; v < 12; ++v) ledger.mark_corrupt(v);
  write_file(path(dir, "ledger.json"), ledger_to_json(ledger).dump());
  const auto bad = run_cli(dir, {"audit", trace, path(dir, "ledger.json"), path(dir, "policy.json")});
  EXPECT_EQ(bad.code, 1) << bad.out;
  EXPECT_NE(bad.out.find("beta exceeded the target"), std::string::npos);
}

TEST(Cli, AuditReplayCatchesLedgerChangesAndTampering) {
  const auto dir = support::scratch_dir("cli_audit");
  ASSERT_EQ(run_cli(dir, {"generate", "--preset", "history", "--mode", "vertex", "--seed", "3"}).code, 0);
  const auto trace = path(dir, "trace.ndjson");
  const auto ok = run_cli(dir, {"audit", trace, path(dir, "ledger.json"), path(dir, "policy.json")});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;

  // A different ledger no longer reproduces the recorded metrics.
  const auto t = read_trace(trace);
  auto ledger = read_ledger(path(dir, "ledger.json"), t.history.vertex_count());
  t.history.back().community.for_each([&](VertexId v) {
    if (ledger.is_honest(v)) ledger.mark_corrupt(v);
  });
  write_file(path(dir, "other_ledger.json"), ledger_to_json(ledger).dump());
  EXPECT_EQ(run_cli(dir, {"audit", trace, path(dir, "other_ledger.json"), path(dir, "policy.json")}).code, 2);

  // Tampered metrics are caught by the replay.
  auto text = read_file(trace);
  const auto pos = text.rfind("\"size\":");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "\"size\":9999,\"x\":");
  write_file(path(dir, "tampered.ndjson"), text);
  const auto tampered = run_cli(dir, {"audit", path(dir, "tampered.ndjson"), path(dir, "ledger.json"),
                                      path(dir, "policy.json")});
  EXPECT_EQ(tampered.code, 2);
  EXPECT_NE(tampered.out.find("metrics replay: mismatch"), std::string::npos);
}

TEST(Cli, GenerateIsDeterministic) {
  const auto a = support::scratch_dir("cli_gen_a");
  const auto b = support::scratch_dir("cli_gen_b");
  for (const auto& dir : {a, b}) ASSERT_EQ(run_cli(dir, {"generate", "--preset", "history", "--seed", "7"}).code, 0);
  for (const char* f : {"trace.ndjson", "graph.txt", "ledger.json", "policy.json", "community.txt"})
    EXPECT_EQ(read_file(path(a, f)), read_file(path(b, f))) << f;
  EXPECT_TRUE(fs::exists(a / "generate.manifest.json"));

  const auto top = support::scratch_dir("cli_gen_top");
  ASSERT_EQ(run_cli(top, {"generate", "--preset", "bottleneck-edge"}).code, 0);
  const auto g = read_graph(path(top, "graph.txt"));
  EXPECT_EQ(g.edge_count(), 21u);
  EXPECT_EQ(run_cli(top, {"generate", "--preset", "regular", "--n", "5", "--d", "3"}).code, 3);
  EXPECT_EQ(run_cli(top, {"generate", "--preset", "nope"}).code, 2);
}

TEST(Cli, EstimateCensus) {
  const auto dir = support::scratch_dir("cli_estimate");
  ASSERT_EQ(run_cli(dir, {"generate", "--preset", "labeled", "--n", "200"}).code, 0);
  const auto r = run_cli(dir, {"estimate", path(dir, "graph.txt"), path(dir, "ledger.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("beta_hat: 0.300000 [0.300000, 0.300000]"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli(dir, {"estimate", path(dir, "graph.txt"), path(dir, "ledger.json"), "--radius", "3"}).code, 2);
}

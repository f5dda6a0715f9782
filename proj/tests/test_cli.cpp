#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using cutcover::cli::json;

namespace {

const std::string kData = CUTCOVER_EXAMPLES_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int code = 0;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = cutcover::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("cutcover_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

json without_runtime(json doc) {
  doc.erase("runtime_ms");
  return doc;
}

}  // namespace

TEST(HeldKarpCommand, TriangleBound) {
  const auto r = run({data("k3.graph"), "--eps", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = r.doc();
  EXPECT_GE(doc["bound"].get<double>(), 3.0 * (1 - 1e-9));
  EXPECT_LE(doc["bound"].get<double>(), 3.15);
  EXPECT_TRUE(doc["verified"].get<bool>());
  EXPECT_EQ(doc["seed"].get<int>(), 1);
  for (const char* key : {"bound", "y", "epochs", "iterations", "seed", "runtime_ms", "verified"})
    EXPECT_TRUE(doc.contains(key)) << key;
}

TEST(HeldKarpCommand, KeysSorted) {
  const auto r = run({data("k3.graph"), "--omit-y"});
  ASSERT_EQ(r.code, 0);
  const json doc = r.doc();
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  // Key order in the text matches the parsed order.
  EXPECT_LT(r.out.find("\"bound\""), r.out.find("\"verified\""));
}

TEST(HeldKarpCommand, DisconnectedInputRejected) {
  const auto r = run({data("disconnected.graph")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("disconnected"), std::string::npos);
}

TEST(HeldKarpCommand, MalformedInputRejected) {
  TempDir dir;
  const auto bad = dir.write("bad.graph", "p ghct 3 1\ne 1 9 1\n");
  EXPECT_EQ(run({bad}).code, 2);
  EXPECT_EQ(run({data("missing.graph")}).code, 2);
  EXPECT_EQ(run({data("k3.graph"), "--eps", "0.7"}).code, 2);
  EXPECT_EQ(run({data("k3.graph"), "--mode", "nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(HeldKarpCommand, DeterministicForSeedAndThreads) {
  const auto a = run({data("petersen.graph"), "--seed", "9", "--eps", "0.2"});
  const auto b = run({data("petersen.graph"), "--seed", "9", "--eps", "0.2"});
  const auto c = run({data("petersen.graph"), "--seed", "9", "--eps", "0.2", "--threads", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_runtime(a.doc()).dump(), without_runtime(b.doc()).dump());
  EXPECT_EQ(without_runtime(a.doc()).dump(), without_runtime(c.doc()).dump());
}

TEST(HeldKarpCommand, IterationBudget) {
  const auto r = run({data("petersen.graph"), "--budget-iters", "5"});
  EXPECT_EQ(r.code, 3);
}

TEST(HeldKarpCommand, TraceLines) {
  const auto r = run({data("k3.graph"), "--trace", "--eps", "0.3"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.err);
  std::string line;
  long long count = 0;
  while (std::getline(lines, line)) {
    const json rec = json::parse(line);
    EXPECT_TRUE(rec.contains("lambda"));
    ++count;
  }
  EXPECT_EQ(count, r.doc()["iterations"].get<long long>());
}

TEST(HeldKarpCommand, Tsplib) {
  const auto r = run({data("square.tsp"), "--tsplib", "--eps", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  // The tour of the 10x10 square costs 40 and is optimal for the LP too.
  EXPECT_GE(r.doc()["bound"].get<double>(), 40.0 * (1 - 1e-9));
  EXPECT_LE(r.doc()["bound"].get<double>(), 44.0);
}

TEST(HeldKarpCommand, OutputFile) {
  TempDir dir;
  const auto path = (dir.path / "out.json").string();
  const auto r = run({data("k3.graph"), "-o", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  EXPECT_TRUE(json::parse(f)["verified"].get<bool>());
}

TEST(KecssCommand, Examples) {
  const auto a = run({data("k3.graph"), "--mode", "kecss", "--k", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_GE(a.doc()["bound"].get<double>(), 3.0 * (1 - 1e-9));
  EXPECT_LE(a.doc()["bound"].get<double>(), 3.15);
  const auto b = run({data("k3.graph"), "--mode", "kecss", "--k", "1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_GE(b.doc()["bound"].get<double>(), 1.5 * (1 - 1e-9));
  EXPECT_LE(b.doc()["bound"].get<double>(), 1.575);
  EXPECT_TRUE(b.doc()["verified"].get<bool>());
}

TEST(KecssCommand, BridgeInfeasible) {
  const auto r = run({data("bridge.graph"), "--mode", "kecss", "--k", "2"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("not 2-edge-connected"), std::string::npos);
}

TEST(MincutCommand, Triangle) {
  const auto r = run({data("k3.graph"), "--mode", "mincut"});
  ASSERT_EQ(r.code, 0);
  EXPECT_DOUBLE_EQ(r.doc()["value"].get<double>(), 2.0);
  EXPECT_EQ(r.doc()["side"].size(), 1u);
}

TEST(VerifyCommand, DenseSolutions) {
  TempDir dir;
  const auto ones = run({data("k3.graph"), "--mode", "verify", "--k", "2", "--verify", dir.write("y1", "1 1 1")});
  EXPECT_EQ(ones.code, 0);
  EXPECT_TRUE(ones.doc()["feasible"].get<bool>());
  EXPECT_DOUBLE_EQ(ones.doc()["objective"].get<double>(), 3.0);
  EXPECT_DOUBLE_EQ(ones.doc()["min_cut"].get<double>(), 2.0);

  const auto zero = run({data("k3.graph"), "--mode", "verify", "--verify", dir.write("y0", "0 0 0")});
  EXPECT_EQ(zero.code, 1);
  EXPECT_FALSE(zero.doc()["feasible"].get<bool>());
  EXPECT_DOUBLE_EQ(zero.doc()["min_cut"].get<double>(), 0.0);
}

TEST(VerifyCommand, BoxViolationFlagged) {
  TempDir dir;
  const auto y = dir.write("y", "1.2 1 1");
  const auto loose = run({data("k3.graph"), "--mode", "verify", "--verify", y});
  EXPECT_EQ(loose.code, 0);
  EXPECT_EQ(loose.doc()["bound_violations"].get<int>(), 1);
  const auto strict = run({data("k3.graph"), "--mode", "verify", "--verify", y, "--box"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_FALSE(strict.doc()["feasible"].get<bool>());
  EXPECT_EQ(strict.doc()["bound_violations"].get<int>(), 1);
}

TEST(VerifyCommand, LengthMismatch) {
  TempDir dir;
  const auto r = run({data("k3.graph"), "--mode", "verify", "--verify", dir.write("y", "1 1")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3 edges"), std::string::npos);
}

TEST(VerifyCommand, AcceptsSolverOutput) {
  TempDir dir;
  const auto solved = (dir.path / "solved.json").string();
  ASSERT_EQ(run({data("petersen.graph"), "--eps", "0.2", "-o", solved}).code, 0);
  const auto r = run({data("petersen.graph"), "--mode", "verify", "--verify", solved});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_GE(r.doc()["min_cut"].get<double>(), 2.0 * (1 - 1e-9));
}

TEST(BenchCommand, EmptyDirectory) {
  TempDir dir;
  const auto csv = run({dir.path.string(), "--mode", "bench", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 1);
  const auto js = run({dir.path.string(), "--mode", "bench"});
  EXPECT_EQ(js.code, 0);
  EXPECT_TRUE(js.doc()["rows"].empty());
}

TEST(BenchCommand, SuiteRowsAndSoftFailures) {
  TempDir dir;
  for (const char* name : {"k3.graph", "c8.graph", "petersen.graph", "bridge.graph", "square.tsp"})
    fs::copy_file(data(name), dir.path / name);
  dir.write("broken.graph", "p ghct 2 5\n");
  const auto r = run({dir.path.string(), "--mode", "bench", "--eps", "0.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json rows = r.doc()["rows"];
  ASSERT_EQ(rows.size(), 6u);
  int ok = 0;
  for (const auto& row : rows) {
    if (row["status"] == "ok") {
      ++ok;
      EXPECT_EQ(row["invariants"], "ok");
    } else {
      EXPECT_EQ(row["file"], "broken.graph");
    }
  }
  EXPECT_EQ(ok, 5);
}

TEST(BenchCommand, IterationsGrowAsEpsShrinks) {
  TempDir dir;
  fs::copy_file(data("c8.graph"), dir.path / "c8.graph");
  const auto r = run({dir.path.string(), "--mode", "bench", "--eps", "0.3,0.1,0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rows = r.doc()["rows"];
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_GE(rows[i]["iterations"].get<long long>(), rows[i - 1]["iterations"].get<long long>());
}

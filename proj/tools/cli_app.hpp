#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cutcover/cutcover.hpp"

namespace cutcover::cli {

enum Exit : int {
  kOk = 0,
  kRejected = 1,  // verify found the solution infeasible, or bench hit a hard failure
  kInvalid = 2,
  kBudget = 3,
  kInfeasible = 4,
  kInternal = 5,
};

struct RunConfig {
  std::string mode = "heldkarp";
  std::vector<double> eps{0.05};
  int k = 2;
  std::uint64_t seed = 1;
  int threads = 1;
  long long budget_iters = 0;
  int budget_retries = 64;
  bool trace = false;
  std::string format = "json";
  std::string input;
  std::string output;
  std::string solution;  // verify mode
  bool tsplib = false;
  bool box = false;      // verify mode: also require y <= 1
  bool omit_y = false;
  std::string problem = "heldkarp";  // bench mode
};

using json = nlohmann::json;

inline Graph read_graph(const std::string& path, bool tsplib) {
  const std::string text = read_file(path);
  return tsplib ? load_tsplib_euc2d(text) : load_graph(text);
}

inline bool looks_like_tsplib(const std::filesystem::path& p) { return p.extension() == ".tsp"; }

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// Relative slack on the covering check; the solver's rescaled y meets each
// demand only up to rounding.
inline constexpr double kFeasibilitySlack = 1e-9;

// Minimum cut of g under y (exact), the number of coordinates above 1 and
// the objective c.y.
struct Check {
  double min_cut = 0.0;
  int above_one = 0;
  double objective = 0.0;
};

inline Check check_solution(const Graph& g, const std::vector<double>& y) {
  Check c;
  c.min_cut = g.num_vertices() < 2 ? kInf : exact_min_cut(g, EdgeWeights(y.begin(), y.end())).value;
  for (std::size_t e = 0; e < y.size(); ++e) {
    c.objective += g.edge(static_cast<int>(e)).cost * y[e];
    if (y[e] > 1.0 + kFeasibilitySlack) ++c.above_one;
  }
  return c;
}

inline constexpr double kSparseCutoff = 1e-12;

// Sparse y as [edge, value] pairs with 1-based edge ids in input order.
inline json sparse(const std::vector<double>& y) {
  json out = json::array();
  for (std::size_t e = 0; e < y.size(); ++e)
    if (y[e] > kSparseCutoff) out.push_back(json::array({e + 1, y[e]}));
  return out;
}

// Reads a solution either as solver JSON output (its "y" pairs) or as a
// dense whitespace-separated list of m values.
inline std::vector<double> read_solution(const std::string& path, int m) {
  const std::string text = read_file(path);
  std::vector<double> y;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("solution file: ") + e.what());
    }
    if (!doc.contains("y") || !doc["y"].is_array()) throw ParseError("solution file has no 'y' array");
    y.assign(static_cast<std::size_t>(m), 0.0);
    for (const auto& pair : doc["y"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number())
        throw ParseError("solution entries must be [edge, value] pairs");
      const long long e = pair[0].get<long long>();
      if (e < 1 || e > m) throw ValidationError("solution edge id " + std::to_string(e) + " out of range");
      y[static_cast<std::size_t>(e - 1)] = pair[1].get<double>();
    }
    return y;
  }
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      y.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw ParseError("solution file: bad number '" + token + "'");
    }
  }
  if (static_cast<int>(y.size()) != m)
    throw ValidationError("solution has " + std::to_string(y.size()) + " entries, graph has " + std::to_string(m) +
                          " edges");
  return y;
}

inline SolverOptions solver_options(const RunConfig& cfg, std::ostream& err) {
  SolverOptions opts;
  opts.max_iterations = cfg.budget_iters;
  opts.max_retries = cfg.budget_retries;
  if (cfg.trace)
    opts.trace = [&err](const TraceRecord& r) {
      err << json{{"epoch", r.epoch},         {"lambda", r.lambda},     {"focus_size", r.focus_size},
                  {"delta", r.delta},         {"max_cong", r.max_cong}, {"weight_sum", r.weight_sum}}
                 .dump()
          << '\n';
    };
  return opts;
}

inline CoverSolution solve(const std::string& problem, const Graph& g, double eps, int k, std::uint64_t seed,
                           SolverOptions opts) {
  if (problem == "heldkarp") {
    if (!is_k_edge_connected(g, 1, seed)) throw ValidationError("graph is disconnected");
    return held_karp(g, g.costs(), eps, seed, std::move(opts));
  }
  return solve_kecss(g, g.costs(), k, eps, seed, std::move(opts));
}

inline void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + cfg.output);
  f << text;
}

inline std::string csv_cell(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

inline void emit_csv(const RunConfig& cfg, const std::vector<std::string>& columns, const std::vector<json>& rows,
                     std::ostream& out) {
  std::ostringstream text;
  for (std::size_t i = 0; i < columns.size(); ++i) text << (i ? "," : "") << columns[i];
  text << '\n';
  for (const json& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) text << (i ? "," : "") << csv_cell(row.at(columns[i]));
    text << '\n';
  }
  if (cfg.output.empty()) {
    out << text.str();
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + cfg.output);
  f << text.str();
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.eps.size() != 1) throw ValidationError("--eps takes a single value outside bench mode");
  const Graph g = read_graph(cfg.input, cfg.tsplib);
  const auto start = std::chrono::steady_clock::now();
  const CoverSolution sol = solve(cfg.mode, g, cfg.eps[0], cfg.k, cfg.seed, solver_options(cfg, err));
  const double runtime = elapsed_ms(start);
  const int demand = cfg.mode == "heldkarp" ? 2 : cfg.k;
  const Check check = check_solution(g, sol.y);
  const bool verified = !(check.min_cut < demand * (1.0 - kFeasibilitySlack)) &&
                        (cfg.mode == "heldkarp" || check.above_one == 0);
  json doc{{"mode", cfg.mode},
           {"bound", sol.bound},
           {"epochs", sol.stats.epochs},
           {"iterations", sol.stats.iterations},
           {"focus_calls", sol.stats.focus_calls},
           {"eps", cfg.eps[0]},
           {"k", demand},
           {"n", g.num_vertices()},
           {"m", g.num_edges()},
           {"seed", cfg.seed},
           {"runtime_ms", runtime},
           {"min_cut", check.min_cut},
           {"verified", verified}};
  if (cfg.format == "csv") {
    emit_csv(cfg, {"mode", "n", "m", "eps", "k", "bound", "epochs", "iterations", "focus_calls", "runtime_ms", "verified"},
             {doc}, out);
    return kOk;
  }
  if (!cfg.omit_y) doc["y"] = sparse(sol.y);
  emit(cfg, doc, out);
  return kOk;
}

inline int cmd_mincut(const RunConfig& cfg, std::ostream& out) {
  const Graph g = read_graph(cfg.input, cfg.tsplib);
  if (g.num_vertices() < 2) throw ValidationError("minimum cut needs at least two vertices");
  const MinCut cut = exact_min_cut(g, g.costs());
  json side = json::array();
  for (int v : cut.side.members) side.push_back(v + 1);
  json doc{{"value", cut.value}, {"side", side}, {"n", g.num_vertices()}, {"m", g.num_edges()}};
  if (cfg.format == "csv") {
    emit_csv(cfg, {"n", "m", "value"}, {doc}, out);
    return kOk;
  }
  emit(cfg, doc, out);
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.solution.empty()) throw ValidationError("verify mode needs --verify <solution file>");
  const Graph g = read_graph(cfg.input, cfg.tsplib);
  const std::vector<double> y = read_solution(cfg.solution, g.num_edges());
  for (double v : y)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("solution entries must be finite and nonnegative");
  const Check c = check_solution(g, y);
  const bool covers = !(c.min_cut < cfg.k * (1.0 - kFeasibilitySlack));
  const bool feasible = covers && (!cfg.box || c.above_one == 0);
  json doc{{"min_cut", c.min_cut}, {"k", cfg.k},          {"covers", covers},
           {"objective", c.objective}, {"box_checked", cfg.box}, {"bound_violations", c.above_one},
           {"feasible", feasible}};
  if (cfg.format == "csv")
    emit_csv(cfg, {"k", "min_cut", "covers", "bound_violations", "objective", "feasible"}, {doc}, out);
  else
    emit(cfg, doc, out);
  return feasible ? kOk : kRejected;
}

inline const std::vector<std::string>& bench_columns() {
  static const std::vector<std::string> cols{"file",        "n",          "m",           "eps",
                                             "bound",       "epochs",     "iterations",  "focus_calls",
                                             "max_focus",   "runtime_ms", "invariants",  "status"};
  return cols;
}

// One row per (instance, eps). Load, validation and budget errors are soft
// and recorded in the status column; an invariant violation is hard.
inline int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(cfg.input)) throw ValidationError(cfg.input + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.input))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<json> rows;
  bool hard = false;
  for (const auto& path : files) {
    for (double eps : cfg.eps) {
      json row{{"file", path.filename().string()}, {"n", nullptr},  {"m", nullptr},
               {"eps", eps},      {"bound", nullptr},       {"epochs", nullptr},
               {"iterations", nullptr}, {"focus_calls", nullptr}, {"max_focus", nullptr},
               {"runtime_ms", nullptr}, {"invariants", "n/a"},    {"status", "ok"}};
      try {
        const Graph g = read_graph(path.string(), cfg.tsplib || looks_like_tsplib(path));
        row["n"] = g.num_vertices();
        row["m"] = g.num_edges();
        const auto start = std::chrono::steady_clock::now();
        const CoverSolution sol = solve(cfg.problem, g, eps, cfg.k, cfg.seed, solver_options(cfg, err));
        row["runtime_ms"] = elapsed_ms(start);
        row["bound"] = sol.bound;
        row["epochs"] = sol.stats.epochs;
        row["iterations"] = sol.stats.iterations;
        row["focus_calls"] = sol.stats.focus_calls;
        row["max_focus"] = sol.stats.max_focus_size;
        row["invariants"] = "ok";
      } catch (const ContractViolation& e) {
        row["invariants"] = "violated";
        row["status"] = std::string("error: ") + e.what();
        hard = true;
      } catch (const Error& e) {
        row["status"] = std::string("error: ") + e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  if (cfg.format == "csv") {
    emit_csv(cfg, bench_columns(), rows, out);
  } else {
    emit(cfg, json{{"rows", rows}}, out);
  }
  return hard ? kRejected : kOk;
}

inline void validate(const RunConfig& cfg) {
  for (double e : cfg.eps)
    if (!(e > 0.0 && e < 0.5)) throw ValidationError("eps must lie in (0, 0.5)");
  if (cfg.eps.empty()) throw ValidationError("--eps needs a value");
  if (cfg.k < 1) throw ValidationError("k must be at least 1");
  if (cfg.threads < 1) throw ValidationError("threads must be at least 1");
  if (cfg.budget_iters < 0 || cfg.budget_retries < 0) throw ValidationError("budgets must be nonnegative");
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  set_worker_count(cfg.threads);
  if (cfg.mode == "heldkarp" || cfg.mode == "kecss") return cmd_solve(cfg, out, err);
  if (cfg.mode == "mincut") return cmd_mincut(cfg, out);
  if (cfg.mode == "verify") return cmd_verify(cfg, out);
  return cmd_bench(cfg, out, err);
}

// Full command line in, exit code out. Errors go to err as one line.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Approximate cut covering and k-ECSS LP solver", "cutcover_cli"};
  app.add_option("input", cfg.input, "graph file, or a directory of instances in bench mode")->required();
  app.add_option("--mode", cfg.mode, "heldkarp, kecss, mincut, verify or bench")
      ->check(CLI::IsMember({"heldkarp", "kecss", "mincut", "verify", "bench"}));
  app.add_option("--eps", cfg.eps, "target accuracy in (0, 0.5); a comma list in bench mode")->delimiter(',');
  app.add_option("--k", cfg.k, "connectivity demand (kecss, verify, bench --problem kecss)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_option("--budget-iters", cfg.budget_iters, "MWU iteration budget, 0 for the derived bound");
  app.add_option("--budget-retries", cfg.budget_retries, "repackings allowed per epoch");
  app.add_flag("--trace", cfg.trace, "write one JSON line per MWU iteration to stderr");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--verify", cfg.solution, "solution file checked in verify mode");
  app.add_flag("--box", cfg.box, "verify mode: flag coordinates above 1");
  app.add_flag("--tsplib", cfg.tsplib, "read the input as TSPLIB EUC_2D");
  app.add_flag("--omit-y", cfg.omit_y, "leave the solution vector out of the JSON output");
  app.add_option("--problem", cfg.problem, "bench mode: heldkarp or kecss")
      ->check(CLI::IsMember({"heldkarp", "kecss"}));
  app.add_option("-o,--output", cfg.output, "write the result here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }

  try {
    return dispatch(cfg, out, err);
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace cutcover::cli

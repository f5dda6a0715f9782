#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cutcover/common.hpp"

namespace cutcover {

// Weights are kept as binary64 times 2^(kRescaleBits * scale_exponent).
inline constexpr int kRescaleBits = 512;
inline const double kRescaleLimit = std::ldexp(1.0, kRescaleBits);

// Constant in the per-Focus iteration bound C*ln(m)*ln(eta*|B|/eps)/eps^2.
inline constexpr double kFocusIterationConstant = 8.0;

struct TraceRecord {
  long long epoch = 0;
  double lambda = 0.0;
  std::size_t focus_size = 0;
  double delta = 0.0;
  double max_cong = 0.0;
  double weight_sum = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct SolveStats {
  long long epochs = 0;
  long long iterations = 0;
  long long focus_calls = 0;
  long long max_focus_iterations = 0;
  std::size_t max_focus_size = 0;
  std::vector<double> lambda_trajectory;  // normalized by the scale exponent
  double weight_bound_exponent = 0.0;     // accumulated exponent of the weight upper bound
  double packing_sum = 0.0;               // sum over iterations of <1, g>
  double final_max_cong = 0.0;
  long long packings = 0;
  long long retries = 0;
  double seconds_init = 0.0;
  double seconds_epochs = 0.0;
  double epoch_bound = 0.0;
  int scale_exponent = 0;
};

// MWU state. w and cong are per row (edge); lambda is the certified lower
// bound on every column weight.
class DualState {
 public:
  DualState(std::size_t rows, double eps)
      : w(rows, 1.0), cong(rows, 0.0), eps_(eps),
        eta_(std::log(std::max<double>(static_cast<double>(rows), 2.0)) / eps),
        weight_sum_(static_cast<double>(rows)) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("engine accuracy must lie in (0, 1)");
    if (rows == 0) throw ValidationError("instance needs at least one row");
  }

  std::vector<double> w;
  std::vector<double> cong;
  double lambda = 0.0;
  int scale_exponent = 0;

  std::size_t rows() const { return w.size(); }
  double eps() const { return eps_; }
  double eta() const { return eta_; }
  double threshold() const { return (1.0 + eps_) * lambda; }
  double max_cong() const { return max_cong_; }
  bool exhausted() const { return max_cong_ >= eta_; }
  double weight_sum() const { return weight_sum_; }

  // w_i *= 1 + a, cong_i += a.
  void bump(std::size_t i, double a) {
    const double before = w[i];
    w[i] = before * (1.0 + a);
    weight_sum_ += before * a;
    cong[i] += a;
    if (cong[i] > max_cong_) max_cong_ = cong[i];
    if (w[i] > kRescaleLimit) rescale_pending_ = true;
  }

  bool rescale_pending() const { return rescale_pending_; }

  // Multiplies w and lambda by 2^-512. Every ratio the algorithm uses is
  // unchanged; callers holding cached weight sums must refresh them.
  void rescale() {
    const double f = std::ldexp(1.0, -kRescaleBits);
    for (double& x : w) x *= f;
    lambda *= f;
    ++scale_exponent;
    rescale_pending_ = false;
    resum();
  }

  void resum() {
    weight_sum_ = 0.0;
    for (double x : w) weight_sum_ += x;
  }

  // log of the true (unscaled) weight.
  double log_weight(std::size_t i) const {
    return std::log(w[i]) + scale_exponent * kRescaleBits * std::log(2.0);
  }
  double log_weight_sum() const {
    return std::log(weight_sum_) + scale_exponent * kRescaleBits * std::log(2.0);
  }

  // Best dual snapshot, stored normalized as y = w/lambda.
  std::vector<double> best_y;
  double best_value = kInf;

 private:
  double eps_;
  double eta_;
  double weight_sum_;
  double max_cong_ = 0.0;
  bool rescale_pending_ = false;
};

// New epoch: lambda grows by (1+eps); the snapshot is replaced when
// <1,w>/lambda improves.
inline void epoch_advance(DualState& s) {
  s.lambda *= 1.0 + s.eps();
  s.resum();
  const double value = s.weight_sum() / s.lambda;
  if (value < s.best_value) {
    s.best_value = value;
    s.best_y.resize(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) s.best_y[i] = s.w[i] / s.lambda;
  }
}

struct SolverOptions {
  double eps = 0.05;                 // accuracy used inside the MWU loop
  long long max_iterations = 0;      // 0: derived from the iteration bounds
  int max_retries = 64;              // fresh packings per epoch before giving up
  bool check_invariants = true;
  TraceSink trace;
};

// Bookkeeping shared by every Focus implementation: counters, budget, trace
// and the runtime checks of the weight bounds.
class MwuMonitor {
 public:
  MwuMonitor(const SolverOptions& opts, std::size_t rows)
      : opts_(opts), rows_(static_cast<double>(std::max<std::size_t>(rows, 2))) {}

  SolveStats stats;

  const SolverOptions& options() const { return opts_; }

  double focus_iteration_bound(const DualState& s, std::size_t focus_size) const {
    const double eps = s.eps();
    const double inner = std::max(std::log(s.eta() * static_cast<double>(focus_size) / eps), 1.0);
    return kFocusIterationConstant * std::log(rows_) * inner / (eps * eps) + 2.0;
  }

  void begin_focus(std::size_t focus_size) {
    ++stats.focus_calls;
    stats.max_focus_size = std::max(stats.max_focus_size, focus_size);
    focus_iterations_ = 0;
    focus_size_ = focus_size;
  }

  // Called once per Focus iteration before the weights move.
  void before_update(const DualState& s, double sum_g) {
    const double inc = (1.0 + s.eps()) * s.lambda * sum_g / s.weight_sum();
    stats.weight_bound_exponent += inc;
    stats.packing_sum += sum_g;
  }

  // Called after the weights moved. rows lists the rows that changed.
  void after_update(const DualState& s, std::span<const int> rows, std::size_t active, double delta) {
    ++stats.iterations;
    ++focus_iterations_;
    stats.max_focus_iterations = std::max(stats.max_focus_iterations, focus_iterations_);
    if (opts_.check_invariants) {
      const double lhs = s.log_weight_sum();
      const double rhs = std::log(static_cast<double>(s.rows())) + stats.weight_bound_exponent;
      if (lhs > rhs + 1e-9 * (1.0 + std::abs(rhs)))
        throw ContractViolation("total weight exceeds its multiplicative upper bound");
      for (int i : rows) {
        const auto r = static_cast<std::size_t>(i);
        const double need = (1.0 - s.eps()) * s.cong[r];
        if (s.log_weight(r) < need - 1e-9 * (1.0 + need))
          throw ContractViolation("row weight fell below exp((1-eps)*cong)");
      }
      if (static_cast<double>(focus_iterations_) > focus_iteration_bound(s, focus_size_))
        throw ContractViolation("Focus exceeded its iteration bound");
    }
    if (opts_.max_iterations > 0 && stats.iterations > opts_.max_iterations)
      throw BudgetExceeded("iteration budget of " + std::to_string(opts_.max_iterations) + " exceeded");
    if (opts_.trace) {
      opts_.trace(TraceRecord{stats.epochs, s.lambda * std::ldexp(1.0, s.scale_exponent * kRescaleBits),
                              active, delta, s.max_cong(), s.weight_sum()});
    }
  }

 private:
  const SolverOptions& opts_;
  double rows_;
  long long focus_iterations_ = 0;
  std::size_t focus_size_ = 0;
};

// ---------------------------------------------------------------------------
// Explicit instance: columns stored sparsely, used for tests and as the
// reference the implicit oracles are compared against.

struct SparseColumn {
  std::vector<int> rows;
  std::vector<double> coef;
};

class ExplicitInstance {
 public:
  ExplicitInstance(std::size_t rows, std::vector<SparseColumn> columns)
      : rows_(rows), columns_(std::move(columns)) {
    for (const auto& c : columns_) {
      CUTCOVER_CHECK(c.rows.size() == c.coef.size(), "column shape mismatch");
      double mx = 0.0;
      for (std::size_t k = 0; k < c.rows.size(); ++k) {
        CUTCOVER_CHECK(c.rows[k] >= 0 && static_cast<std::size_t>(c.rows[k]) < rows_, "row out of range");
        CUTCOVER_CHECK(c.coef[k] >= 0.0, "negative coefficient");
        mx = std::max(mx, c.coef[k]);
      }
      if (!(mx > 0.0)) throw InfeasibleError("column without a positive entry");
    }
  }

  // Dense row-major construction; each inner vector is one row.
  static ExplicitInstance from_dense(const std::vector<std::vector<double>>& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<SparseColumn> cols(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j] != 0.0) {
          cols[j].rows.push_back(static_cast<int>(i));
          cols[j].coef.push_back(a[i][j]);
        }
    return ExplicitInstance(m, std::move(cols));
  }

  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_.size(); }
  const SparseColumn& column(std::size_t j) const { return columns_[j]; }

  double column_weight(std::size_t j, const std::vector<double>& w) const {
    const auto& c = columns_[j];
    double total = 0.0;
    for (std::size_t k = 0; k < c.rows.size(); ++k) total += c.coef[k] * w[static_cast<std::size_t>(c.rows[k])];
    return total;
  }

  double max_coef(std::size_t j) const {
    const auto& c = columns_[j];
    return *std::max_element(c.coef.begin(), c.coef.end());
  }

  double min_column_weight(const std::vector<double>& w) const {
    double best = kInf;
    for (std::size_t j = 0; j < columns_.size(); ++j) best = std::min(best, column_weight(j, w));
    return best;
  }

 private:
  std::size_t rows_;
  std::vector<SparseColumn> columns_;
};

// Focus on an explicit column set. Every listed column must be below
// (1+eps)*lambda on entry.
inline void focus(const ExplicitInstance& inst, std::vector<std::size_t> batch, DualState& s,
                  MwuMonitor& mon) {
  const double limit = s.threshold();
  for (std::size_t j : batch)
    if (!(inst.column_weight(j, s.w) < limit))
      throw ContractViolation("focus column already at or above (1+eps)*lambda");
  std::sort(batch.begin(), batch.end());
  batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
  if (batch.empty() || s.exhausted()) return;
  mon.begin_focus(batch.size());

  std::vector<double> x(batch.size(), 0.0);
  std::vector<double> ag(s.rows(), 0.0);
  std::vector<char> touched_flag(s.rows(), 0);
  std::vector<int> touched;
  std::vector<std::size_t> active(batch.size());
  std::iota(active.begin(), active.end(), std::size_t{0});
  bool first = true;
  const double eps = s.eps();

  while (!active.empty() && !s.exhausted()) {
    touched.clear();
    auto spread = [&](std::size_t local, double amount) {
      const auto& c = inst.column(batch[local]);
      for (std::size_t k = 0; k < c.rows.size(); ++k) {
        const auto r = static_cast<std::size_t>(c.rows[k]);
        if (!touched_flag[r]) {
          touched_flag[r] = 1;
          touched.push_back(c.rows[k]);
        }
        ag[r] += c.coef[k] * amount;
      }
    };
    std::vector<double> g(batch.size(), 0.0);
    double delta = 0.0;
    if (first) {
      for (std::size_t a : active) g[a] = eps / (static_cast<double>(active.size()) * inst.max_coef(batch[a]));
      for (std::size_t a : active) spread(a, g[a]);
      first = false;
    } else {
      for (std::size_t a : active) spread(a, x[a]);
      double mx = 0.0;
      for (int r : touched) mx = std::max(mx, ag[static_cast<std::size_t>(r)]);
      delta = eps / mx;
      for (std::size_t a : active) g[a] = delta * x[a];
      for (int r : touched) ag[static_cast<std::size_t>(r)] *= delta;
    }
    double sum_g = 0.0;
    for (std::size_t a : active) {
      x[a] += g[a];
      sum_g += g[a];
    }
    std::sort(touched.begin(), touched.end());
    mon.before_update(s, sum_g);
    for (int r : touched) {
      const auto i = static_cast<std::size_t>(r);
      s.bump(i, ag[i]);
      ag[i] = 0.0;
      touched_flag[i] = 0;
    }
    mon.after_update(s, touched, active.size(), delta);
    if (s.rescale_pending()) s.rescale();
    const double lim = s.threshold();
    std::erase_if(active, [&](std::size_t a) { return !(inst.column_weight(batch[a], s.w) < lim); });
  }
}

// ---------------------------------------------------------------------------
// Driver loop. A driver supplies the initial lambda (at most the minimum
// column weight for w = 1) and clears epochs. clear_epoch returns false when
// the congestion cap was hit before the epoch cleared.

template <class D>
concept EpochDriver = requires(D d, DualState& s, MwuMonitor& mon) {
  { d.initial_lambda(s) } -> std::convertible_to<double>;
  { d.clear_epoch(s, mon) } -> std::same_as<bool>;
};

struct SolveResult {
  double value = kInf;     // <1, y>
  std::vector<double> y;   // w*/lambda*, satisfies A^T y >= 1
  SolveStats stats;
};

inline double epoch_bound(std::size_t rows, double eps) {
  const double m = std::max<double>(static_cast<double>(rows), 2.0);
  return (1.0 + 1.0 / eps) * std::log(m) / std::log1p(eps) + 1.0;
}

template <EpochDriver Driver>
SolveResult run_solver(std::size_t rows, const SolverOptions& opts, Driver& driver) {
  using Clock = std::chrono::steady_clock;
  DualState s(rows, opts.eps);
  MwuMonitor mon(opts, rows);
  mon.stats.epoch_bound = epoch_bound(rows, opts.eps);

  auto t0 = Clock::now();
  s.lambda = driver.initial_lambda(s);
  if (!(s.lambda > 0.0) || !std::isfinite(s.lambda))
    throw ContractViolation("initial lambda must be positive and finite");
  s.best_value = s.weight_sum() / s.lambda;
  s.best_y.assign(rows, 1.0 / s.lambda);
  mon.stats.lambda_trajectory.push_back(s.lambda);
  auto t1 = Clock::now();

  while (!s.exhausted()) {
    if (!driver.clear_epoch(s, mon)) break;
    epoch_advance(s);
    ++mon.stats.epochs;
    mon.stats.lambda_trajectory.push_back(s.lambda * std::ldexp(1.0, s.scale_exponent * kRescaleBits));
    if (opts.check_invariants && static_cast<double>(mon.stats.epochs) > mon.stats.epoch_bound)
      throw ContractViolation("epoch count exceeded its bound");
  }
  auto t2 = Clock::now();
  mon.stats.seconds_init = std::chrono::duration<double>(t1 - t0).count();
  mon.stats.seconds_epochs = std::chrono::duration<double>(t2 - t1).count();
  mon.stats.final_max_cong = s.max_cong();
  mon.stats.scale_exponent = s.scale_exponent;

  SolveResult out;
  out.y = std::move(s.best_y);
  out.value = 0.0;
  for (double v : out.y) out.value += v;
  out.stats = std::move(mon.stats);
  return out;
}

// Driver over an explicit instance: each epoch repeatedly focuses on every
// column below the threshold.
class ExplicitDriver {
 public:
  explicit ExplicitDriver(const ExplicitInstance& inst) : inst_(inst) {}

  double initial_lambda(const DualState& s) const { return inst_.min_column_weight(s.w); }

  bool clear_epoch(DualState& s, MwuMonitor& mon) {
    while (!s.exhausted()) {
      std::vector<std::size_t> batch;
      const double lim = s.threshold();
      for (std::size_t j = 0; j < inst_.columns(); ++j)
        if (inst_.column_weight(j, s.w) < lim) batch.push_back(j);
      if (batch.empty()) return true;
      focus(inst_, std::move(batch), s, mon);
    }
    return false;
  }

 private:
  const ExplicitInstance& inst_;
};

// Cut covering denormalization: y_orig_e = (w*_e/lambda*)/c_e.
inline std::vector<double> extract_covering_solution(std::span<const double> y_normalized,
                                                     std::span<const double> costs) {
  CUTCOVER_CHECK(y_normalized.size() == costs.size(), "length mismatch");
  std::vector<double> out(costs.size());
  for (std::size_t e = 0; e < costs.size(); ++e) out[e] = y_normalized[e] / costs[e];
  return out;
}

}  // namespace cutcover

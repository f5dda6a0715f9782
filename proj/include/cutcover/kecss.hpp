#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/cut_oracle.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/mwu.hpp"
#include "cutcover/tree_focus.hpp"

namespace cutcover {

// A cut together with the edges exempted from its demand: the knapsack-cover
// column "y(delta(S) \ F) >= k - |F|".
struct FreeCut {
  std::vector<char> side;
  std::vector<int> exempt;
  double value = kInf;  // v(delta(S) \ F) / (k - |F|)
};

inline double normalized_free_cut_value(const Graph& g, const std::vector<char>& side, std::span<const int> exempt,
                                        std::span<const double> v, int k) {
  if (static_cast<int>(exempt.size()) >= k) throw ValidationError("free cut needs fewer than k exempt edges");
  std::vector<char> skip(static_cast<std::size_t>(g.num_edges()), 0);
  for (int e : exempt) {
    const Edge& ed = g.edge(e);
    if (side[static_cast<std::size_t>(ed.u)] == side[static_cast<std::size_t>(ed.v)])
      throw ValidationError("exempt edge does not cross the cut");
    if (skip[static_cast<std::size_t>(e)]) throw ValidationError("exempt edge listed twice");
    skip[static_cast<std::size_t>(e)] = 1;
  }
  double light = 0.0;
  for (int e : cut_edges(g, side))
    if (!skip[static_cast<std::size_t>(e)]) light += v[static_cast<std::size_t>(e)];
  return light / static_cast<double>(k - static_cast<int>(exempt.size()));
}

inline std::vector<double> truncate(std::span<const double> v, double cap) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x = std::min(x, cap);
  return out;
}

// Whether the minimum cut under v capped at rho = (1+eps)*lambda lies in
// [k*lambda, k*rho).
inline bool range_map_forward(const Graph& g, std::span<const double> v, double lambda, double eps, int k) {
  const double rho = (1.0 + eps) * lambda;
  const double cut = exact_min_cut(g, truncate(v, rho)).value;
  return cut >= k * lambda && cut < k * rho;
}

// The free cut of C whose exempt set is its edges at or above rho. Requires
// the capped weight of C to be below k*rho, which forces fewer than k such
// edges and a normalized value below rho.
inline FreeCut range_map_backward(const Graph& g, const std::vector<char>& side, std::span<const double> v, double rho,
                                  int k) {
  const auto capped = truncate(v, rho);
  if (!(cut_weight(g, capped, side) < k * rho)) throw ValidationError("capped cut weight must be below k*rho");
  FreeCut out;
  out.side = side;
  for (int e : cut_edges(g, side))
    if (v[static_cast<std::size_t>(e)] >= rho) out.exempt.push_back(e);
  CUTCOVER_CHECK(static_cast<int>(out.exempt.size()) < k, "too many heavy edges in a light cut");
  out.value = normalized_free_cut_value(g, side, out.exempt, v, k);
  CUTCOVER_CHECK(out.value < rho, "mapped free cut is not below rho");
  return out;
}

// The minimum normalized free cut is at least lambda exactly when the
// minimum cut under v capped at lambda is at least k*lambda. Starting from
// the plain bound mincut(v)/k, halve until that holds, then bisect until the
// bracket is within a factor 1 + eps/2. On graphs too large for exact cuts
// the tree-packing minimum is used and the result gets a (1+eps) margin.
inline double init_lambda_kecss(CutCoverDriver& d, DualState& s) {
  // Slack as in the epoch check: a cut of k capped edges may sum to just
  // under lambda.
  auto holds = [&](double lambda) { return !(d.min_cut(d.effective(s, lambda)) < lambda * (1.0 - kVerifySlack)); };
  double hi = d.min_cut(d.effective(s));
  CUTCOVER_CHECK(hi > 0.0 && std::isfinite(hi), "minimum cut must be positive");
  double lo = hi;
  if (!holds(lo)) {
    do {
      hi = lo;
      lo *= 0.5;
    } while (!holds(lo));
    while (hi / lo > 1.0 + 0.5 * s.eps()) {
      const double mid = std::sqrt(lo * hi);
      (holds(mid) ? lo : hi) = mid;
    }
  }
  return d.exact() ? lo : lo / (1.0 + s.eps());
}

// Unit-weight minimum cut at least k.
inline bool is_k_edge_connected(const Graph& g, int k, std::uint64_t seed = 1, int exact_max_vertices = 400) {
  const std::vector<double> unit(static_cast<std::size_t>(g.num_edges()), 1.0);
  const double cut = g.num_vertices() <= exact_max_vertices ? exact_min_cut(g, unit).value
                                                            : packed_min_cut(g, unit, seed);
  return cut >= k - 0.5;
}

// Fractional k-ECSS: covering over all free cuts, then clipped to the box.
// Clipping keeps every cut at k or more: either k edges reach 1, or the
// free cut exempting the edges above 1 covers the rest.
inline CoverSolution solve_kecss(const Graph& g, std::span<const double> costs, int k, double eps_target,
                                 std::uint64_t seed, SolverOptions base = {}, EpochOptions epoch = {}) {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (!is_k_edge_connected(g, k, seed, epoch.exact_max_vertices))
    throw InfeasibleError("graph is not " + std::to_string(k) + "-edge-connected");
  const SolverOptions opts = options_for(eps_target, std::move(base));
  CutCoverDriver driver(g, costs, k, CutOracle::Mode::truncated, seed, opts, epoch);
  driver.set_lambda_init(init_lambda_kecss);
  SolveResult r = run_solver(static_cast<std::size_t>(g.num_edges()), opts, driver);
  CoverSolution out;
  out.y = extract_covering_solution(r.y, costs);
  for (double& y : out.y) y = std::min(y, 1.0);
  for (std::size_t e = 0; e < out.y.size(); ++e) out.bound += costs[e] * out.y[e];
  out.stats = std::move(r.stats);
  return out;
}

}  // namespace cutcover

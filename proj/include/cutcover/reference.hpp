#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/cut_oracle.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/kecss.hpp"
#include "cutcover/spanning_tree.hpp"

namespace cutcover {

// One covering constraint sum_i sign_i * y_{row_i} >= demand.
struct CoverRow {
  std::vector<int> rows;
  std::vector<int> sign;  // +1 or -1
  double demand = 0.0;
};

struct LpSolution {
  double value = 0.0;
  std::vector<double> y;
  int pivots = 0;
  bool rational = false;
};

namespace detail {

template <class Scalar>
struct ScalarOps {
  static bool positive(const Scalar& x) { return x > 0; }
  static Scalar from(double v) { return Scalar(v); }
  static double to_double(const Scalar& x) { return static_cast<double>(x); }
};

template <>
struct ScalarOps<mpq_class> {
  static bool positive(const mpq_class& x) { return sgn(x) > 0; }
  static mpq_class from(double v) { return mpq_class(v); }
  static double to_double(const mpq_class& x) { return x.get_d(); }
};

template <>
struct ScalarOps<long double> {
  static constexpr long double kTol = 1e-15L;
  static bool positive(long double x) { return x > kTol; }
  static long double from(double v) { return static_cast<long double>(v); }
  static double to_double(long double x) { return static_cast<double>(x); }
};

// Revised simplex with Bland's rule on the packing side of the covering LP:
// max sum_j demand_j x_j  s.t.  sum_j sign * x_j <= cost_i per variable i,
// x >= 0. The slack basis is feasible because costs are positive. The
// optimal simplex multipliers are the covering solution.
template <class Scalar>
LpSolution solve_covering(std::span<const double> costs, const std::vector<CoverRow>& cons) {
  using Ops = ScalarOps<Scalar>;
  const int m = static_cast<int>(costs.size());
  const int n = static_cast<int>(cons.size());
  for (double c : costs)
    if (!(c > 0.0)) throw ValidationError("costs must be positive");

  std::vector<Scalar> demand(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) demand[static_cast<std::size_t>(j)] = Ops::from(cons[static_cast<std::size_t>(j)].demand);
  std::vector<int> basis(static_cast<std::size_t>(m));
  std::vector<std::vector<Scalar>> binv(static_cast<std::size_t>(m), std::vector<Scalar>(static_cast<std::size_t>(m)));
  std::vector<Scalar> xb(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    basis[static_cast<std::size_t>(i)] = n + i;
    binv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    xb[static_cast<std::size_t>(i)] = Ops::from(costs[static_cast<std::size_t>(i)]);
  }
  auto objective = [&](int var) { return var < n ? demand[static_cast<std::size_t>(var)] : Scalar(0); };

  std::vector<Scalar> price(static_cast<std::size_t>(m)), col(static_cast<std::size_t>(m));
  LpSolution out;
  for (;;) {
    for (int r = 0; r < m; ++r) {
      Scalar acc = 0;
      for (int i = 0; i < m; ++i) {
        const Scalar& bi = binv[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        if (bi != 0) acc += objective(basis[static_cast<std::size_t>(i)]) * bi;
      }
      price[static_cast<std::size_t>(r)] = acc;
    }
    int enter = -1;
    for (int j = 0; j < n + m && enter < 0; ++j) {
      Scalar reduced;
      if (j < n) {
        reduced = demand[static_cast<std::size_t>(j)];
        const auto& c = cons[static_cast<std::size_t>(j)];
        for (std::size_t t = 0; t < c.rows.size(); ++t) {
          if (c.sign[t] > 0)
            reduced -= price[static_cast<std::size_t>(c.rows[t])];
          else
            reduced += price[static_cast<std::size_t>(c.rows[t])];
        }
      } else {
        reduced = -price[static_cast<std::size_t>(j - n)];
      }
      if (Ops::positive(reduced)) enter = j;
    }
    if (enter < 0) break;

    for (int i = 0; i < m; ++i) {
      Scalar acc = 0;
      const auto& row = binv[static_cast<std::size_t>(i)];
      if (enter < n) {
        const auto& c = cons[static_cast<std::size_t>(enter)];
        for (std::size_t t = 0; t < c.rows.size(); ++t) {
          if (c.sign[t] > 0)
            acc += row[static_cast<std::size_t>(c.rows[t])];
          else
            acc -= row[static_cast<std::size_t>(c.rows[t])];
        }
      } else {
        acc = row[static_cast<std::size_t>(enter - n)];
      }
      col[static_cast<std::size_t>(i)] = acc;
    }
    int leave = -1;
    Scalar best_ratio;
    for (int i = 0; i < m; ++i) {
      if (!Ops::positive(col[static_cast<std::size_t>(i)])) continue;
      Scalar ratio = xb[static_cast<std::size_t>(i)] / col[static_cast<std::size_t>(i)];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw InfeasibleError("covering LP is infeasible");

    const auto lv = static_cast<std::size_t>(leave);
    const Scalar pivot = col[lv];
    for (auto& x : binv[lv]) x /= pivot;
    xb[lv] /= pivot;
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (ui == lv || col[ui] == 0) continue;
      const Scalar f = col[ui];
      for (int r = 0; r < m; ++r) binv[ui][static_cast<std::size_t>(r)] -= f * binv[lv][static_cast<std::size_t>(r)];
      xb[ui] -= f * xb[lv];
    }
    basis[lv] = enter;
    ++out.pivots;
  }

  out.y.resize(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) out.y[static_cast<std::size_t>(r)] = Ops::to_double(price[static_cast<std::size_t>(r)]);
  Scalar value = 0;
  for (int i = 0; i < m; ++i) value += objective(basis[static_cast<std::size_t>(i)]) * xb[static_cast<std::size_t>(i)];
  out.value = Ops::to_double(value);

  if constexpr (!std::is_same_v<Scalar, mpq_class>) {
    // Certificate: primal feasibility of the multipliers, dual feasibility of
    // the basic solution, and matching objectives.
    const double scale = 1.0 + std::abs(out.value);
    double primal = 0.0;
    for (int r = 0; r < m; ++r) {
      if (out.y[static_cast<std::size_t>(r)] < -1e-9) throw ContractViolation("LP certificate: negative variable");
      primal += costs[static_cast<std::size_t>(r)] * out.y[static_cast<std::size_t>(r)];
    }
    for (const auto& c : cons) {
      double lhs = 0.0;
      for (std::size_t t = 0; t < c.rows.size(); ++t) lhs += c.sign[t] * out.y[static_cast<std::size_t>(c.rows[t])];
      if (lhs < c.demand - 1e-9 * scale) throw ContractViolation("LP certificate: violated covering row");
    }
    for (int i = 0; i < m; ++i)
      if (xb[static_cast<std::size_t>(i)] < -1e-9L) throw ContractViolation("LP certificate: infeasible basis");
    if (std::abs(primal - out.value) > 1e-9 * scale) throw ContractViolation("LP certificate: duality gap");
  } else {
    out.rational = true;
  }
  return out;
}

}  // namespace detail

inline constexpr int kReferenceMaxVertices = 16;
inline constexpr int kRationalMaxVertices = 10;

inline LpSolution solve_covering_lp(const Graph& g, std::span<const double> costs, const std::vector<CoverRow>& cons) {
  if (g.num_vertices() <= kRationalMaxVertices) return detail::solve_covering<mpq_class>(costs, cons);
  return detail::solve_covering<long double>(costs, cons);
}

// Every cut once, as the edge list of delta(S) with vertex 0 in S.
template <class Visit>
void for_each_cut_edges(const Graph& g, Visit&& visit) {
  const int n = g.num_vertices();
  if (n > kReferenceMaxVertices) throw SizeError("reference enumeration supports at most 16 vertices");
  const std::uint32_t limit = 1u << (n - 1);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::vector<int> cut;
  for (std::uint32_t mask = 0; mask + 1 < limit; ++mask) {
    in[0] = 1;
    for (int v = 1; v < n; ++v) in[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1u;
    cut.clear();
    for (int e = 0; e < g.num_edges(); ++e)
      if (in[static_cast<std::size_t>(g.edge(e).u)] != in[static_cast<std::size_t>(g.edge(e).v)]) cut.push_back(e);
    visit(in, cut);
  }
}

inline CoverRow plain_row(const std::vector<int>& edges, double demand) {
  return {edges, std::vector<int>(edges.size(), 1), demand};
}

// min c.y  s.t.  y(delta(S)) >= k for all cuts, y >= 0.
inline LpSolution exact_cut_cover_lp(const Graph& g, std::span<const double> costs, int k) {
  std::vector<CoverRow> cons;
  for_each_cut_edges(g, [&](const std::vector<char>&, const std::vector<int>& cut) {
    cons.push_back(plain_row(cut, k));
  });
  return solve_covering_lp(g, costs, cons);
}

// Same with 0 <= y <= 1.
inline LpSolution exact_kecss_lp(const Graph& g, std::span<const double> costs, int k) {
  std::vector<CoverRow> cons;
  bool feasible = true;
  for_each_cut_edges(g, [&](const std::vector<char>&, const std::vector<int>& cut) {
    if (static_cast<int>(cut.size()) < k) feasible = false;
    cons.push_back(plain_row(cut, k));
  });
  if (!feasible) throw InfeasibleError("graph is not " + std::to_string(k) + "-edge-connected");
  for (int e = 0; e < g.num_edges(); ++e) cons.push_back({{e}, {-1}, -1.0});
  return solve_covering_lp(g, costs, cons);
}

inline constexpr int kFreeCutMaxVertices = 8;
inline constexpr int kFreeCutMaxK = 3;

// Calls visit(side, cut edges, exempt set) for every free cut (S, F).
template <class Visit>
void for_each_free_cut(const Graph& g, int k, Visit&& visit) {
  if (g.num_vertices() > kFreeCutMaxVertices || k > kFreeCutMaxK)
    throw SizeError("free-cut enumeration supports n <= 8 and k <= 3");
  std::vector<int> exempt;
  for_each_cut_edges(g, [&](const std::vector<char>& in, const std::vector<int>& cut) {
    const int d = static_cast<int>(cut.size());
    exempt.clear();
    visit(in, cut, exempt);
    if (k >= 2)
      for (int a = 0; a < d; ++a) {
        exempt = {cut[static_cast<std::size_t>(a)]};
        visit(in, cut, exempt);
        if (k >= 3)
          for (int b = a + 1; b < d; ++b) {
            exempt = {cut[static_cast<std::size_t>(a)], cut[static_cast<std::size_t>(b)]};
            visit(in, cut, exempt);
          }
      }
  });
}

// Knapsack-cover LP: y(delta(S) \ F) >= k - |F| for every free cut, y >= 0.
inline LpSolution exact_kc_lp(const Graph& g, std::span<const double> costs, int k) {
  std::vector<CoverRow> cons;
  for_each_free_cut(g, k, [&](const std::vector<char>&, const std::vector<int>& cut, const std::vector<int>& f) {
    std::vector<int> rest;
    for (int e : cut)
      if (std::find(f.begin(), f.end(), e) == f.end()) rest.push_back(e);
    cons.push_back(plain_row(rest, k - static_cast<int>(f.size())));
  });
  return solve_covering_lp(g, costs, cons);
}

inline FreeCut min_normalized_free_cut_bruteforce(const Graph& g, std::span<const double> v, int k) {
  FreeCut best;
  for_each_free_cut(g, k, [&](const std::vector<char>& in, const std::vector<int>&, const std::vector<int>& f) {
    const double value = normalized_free_cut_value(g, in, f, v, k);
    if (value < best.value) {
      best.value = value;
      best.side = in;
      best.exempt = f;
    }
  });
  return best;
}

inline constexpr int kTreeCutMaxVertices = 14;

// Every one- and two-edge tree cut below threshold, valued by direct scan.
inline std::vector<std::pair<TreeCut, double>> all_2respecting_cuts_bruteforce(const Graph& g, const SpanningTree& t,
                                                                              const EdgeWeights& u,
                                                                              double threshold) {
  if (g.num_vertices() > kTreeCutMaxVertices) throw SizeError("tree-cut enumeration supports at most 14 vertices");
  std::vector<std::pair<TreeCut, double>> out;
  const auto edges = t.tree_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double one = cut_weight(g, u, t.side(edges[i]));
    if (one < threshold) out.emplace_back(TreeCut::one(edges[i]), one);
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const double two = cut_weight(g, u, t.side(edges[i], edges[j]));
      if (two < threshold) out.emplace_back(TreeCut::two(edges[i], edges[j]), two);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cutcover

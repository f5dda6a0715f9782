#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/cut_oracle.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/mwu.hpp"
#include "cutcover/path_extraction.hpp"
#include "cutcover/spanning_tree.hpp"
#include "cutcover/tree_packing.hpp"

namespace cutcover {

// Edge-disjoint heavy paths covering the tree. Each path is a light edge
// followed by the heavy chain below it (the root's path starts with its heavy
// child), listed top to bottom; its positions are contiguous in Euler order.
struct PathDecomposition {
  std::vector<std::vector<int>> paths;
  std::vector<int> path_of;   // per vertex (tree edge); -1 for the root
  std::vector<int> index_of;  // position of the edge within its path
  std::vector<int> chain_bottom;  // Euler position of the deepest vertex on v's heavy chain

  int max_paths_on_root_path(const SpanningTree& t) const {
    int best = 0;
    for (int v = 0; v < t.num_vertices(); ++v) {
      if (!t.children(v).empty()) continue;
      int count = 0;
      for (int x = v; x != t.root();) {
        const int p = path_of[static_cast<std::size_t>(x)];
        ++count;
        const auto& path = paths[static_cast<std::size_t>(p)];
        x = t.parent(path.front());
      }
      best = std::max(best, count);
    }
    return best;
  }
};

inline PathDecomposition path_decomposition(const SpanningTree& t) {
  const int n = t.num_vertices();
  PathDecomposition d;
  d.path_of.assign(static_cast<std::size_t>(n), -1);
  d.index_of.assign(static_cast<std::size_t>(n), -1);
  d.chain_bottom.assign(static_cast<std::size_t>(n), 0);
  for (int pos = n - 1; pos >= 0; --pos) {
    const int v = t.vertex_at(pos);
    const int h = t.heavy_child(v);
    d.chain_bottom[static_cast<std::size_t>(v)] = h < 0 ? pos : d.chain_bottom[static_cast<std::size_t>(h)];
  }
  for (int pos = 1; pos < n; ++pos) {
    const int v = t.vertex_at(pos);
    const int p = t.parent(v);
    if (p != t.root() && t.heavy_child(p) == v) continue;
    d.paths.emplace_back();
    for (int x = v; x >= 0; x = t.heavy_child(x)) {
      d.path_of[static_cast<std::size_t>(x)] = static_cast<int>(d.paths.size()) - 1;
      d.index_of[static_cast<std::size_t>(x)] = static_cast<int>(d.paths.back().size());
      d.paths.back().push_back(x);
    }
  }
  return d;
}

// Total weight of edges leaving the subtree below tree edge e.
inline double subtree_weight(const CutOracle& o, int e) { return o.cut_value(TreeCut::one(e)); }

// Weight between T_e and T_f for unrelated e, f; for f below e it is the
// weight between T_f and the complement of T_e. Both follow from
// cut(e, f) = w(T_e) + w(T_f) - 2 * (that weight).
inline double cross_weight(const CutOracle& o, int e, int f) {
  const auto& t = o.tree();
  if (e == f) throw ValidationError("cross_weight needs distinct edges");
  if (t.contains(f, e)) std::swap(e, f);
  return 0.5 * (subtree_weight(o, e) + subtree_weight(o, f) - o.cut_value(TreeCut::two(e, f)));
}

struct InterestedPair {
  enum class Kind { cross, down };
  Kind kind = Kind::cross;
  int p = 0;  // path ids
  int q = 0;
  std::vector<int> p_edges;  // cross: P edges interested in Q; down: P edges interested below into Q
  std::vector<int> q_edges;  // cross: Q edges interested in P; down: all of Q

  PathMinor minor(const SpanningTree& t) const {
    auto by_depth = [&](int a, int b) { return t.depth(a) < t.depth(b); };
    std::vector<int> left = p_edges, right = q_edges;
    std::sort(left.begin(), left.end(), by_depth);
    std::sort(right.begin(), right.end(), by_depth);
    PathMinor m;
    if (kind == Kind::cross) {
      // Deep-to-shallow on P, then the junction, then shallow-to-deep on Q.
      m.edges.assign(left.rbegin(), left.rend());
    } else {
      // Top to bottom along one vertical chain.
      m.edges = left;
    }
    m.root = static_cast<int>(m.edges.size());
    m.edges.insert(m.edges.end(), right.begin(), right.end());
    return m;
  }
};

namespace detail {

// Interval J minus the nested-or-disjoint interval cut.
inline std::vector<Interval> minus(Interval j, Interval cut) {
  if (cut.hi <= j.lo || j.hi <= cut.lo) return {j};
  std::vector<Interval> out;
  if (j.lo < cut.lo) out.push_back({j.lo, cut.lo});
  if (cut.hi < j.hi) out.push_back({cut.hi, j.hi});
  return out;
}

// Walks down from start along majority subtrees: a vertex y is majority when
// 2 * mass(subtree of y) > total. Heavy chains are binary searched (mass only
// shrinks going down); among light children the only possible majority child
// is found by a prefix search. visit(top, bottom) receives each chain segment
// of majority vertices.
template <class Mass, class Visit>
void majority_descent(const SpanningTree& t, const PathDecomposition& d, int start, double total, Mass&& mass,
                      Visit&& visit) {
  auto majority = [&](Interval j) { return 2.0 * mass(j) > total; };
  int cur = start;
  while (true) {
    const int top = t.tin(cur);
    int lo = 0, hi = d.chain_bottom[static_cast<std::size_t>(cur)] - top;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      const int v = t.vertex_at(top + mid);
      if (majority({t.tin(v), t.tout(v)}))
        lo = mid;
      else
        hi = mid - 1;
    }
    const int y = t.vertex_at(top + lo);
    visit(cur, y);
    const auto& ch = t.children(y);
    if (ch.size() < 2) return;
    const Interval light{t.tout(ch[0]), t.tout(y)};
    if (!majority(light)) return;
    std::size_t a = 1, b = ch.size() - 1;
    while (a < b) {
      const std::size_t mid = (a + b) / 2;
      if (majority({light.lo, t.tout(ch[mid])}))
        b = mid;
      else
        a = mid + 1;
    }
    const int c = ch[a];
    if (!majority({t.tin(c), t.tout(c)})) return;
    cur = c;
  }
}

}  // namespace detail

// Interested path pairs. Edge e is cross-interested in an unrelated f when
// 2 w(T_e, T_f) > w(T_e), and down-interested in a descendant f when
// 2 w(T_f, V \ T_e) > w(T_e). Both interest sets are vertical chains, found
// by majority descent from the root (cross) or from e (down).
inline std::vector<InterestedPair> interested_path_pairs(const CutOracle& o, const PathDecomposition& d) {
  const auto& t = o.tree();
  const int n = t.num_vertices();
  const Interval everything{0, n};
  // Per edge: the paths its cross and down interest chains reach.
  std::vector<std::vector<int>> cross_hits(static_cast<std::size_t>(n)), down_hits(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t ue) {
    const int e = static_cast<int>(ue);
    if (e == t.root()) return;
    const double total = subtree_weight(o, e);
    if (!(total > 0.0)) return;
    const Interval ie{t.tin(e), t.tout(e)};
    const int pe = d.path_of[ue];
    auto cross_mass = [&](Interval j) {
      const auto rest = detail::minus(j, ie);
      return o.range_weight(std::span<const Interval>(&ie, 1), rest);
    };
    detail::majority_descent(t, d, t.root(), total, cross_mass, [&](int, int bottom) {
      if (bottom != t.root() && !t.contains(bottom, e)) cross_hits[ue].push_back(d.path_of[static_cast<std::size_t>(bottom)]);
    });
    const auto outside = detail::minus(everything, ie);
    auto down_mass = [&](Interval j) { return o.range_weight(std::span<const Interval>(&j, 1), outside); };
    detail::majority_descent(t, d, e, total, down_mass, [&](int, int bottom) {
      const int q = d.path_of[static_cast<std::size_t>(bottom)];
      if (bottom != e && q != pe) down_hits[ue].push_back(q);
    });
  }, 64);

  std::map<std::pair<int, int>, std::pair<std::vector<int>, std::vector<int>>> cross;
  std::map<std::pair<int, int>, std::vector<int>> down;
  for (int e = 0; e < n; ++e) {
    const int pe = d.path_of[static_cast<std::size_t>(e)];
    for (int q : cross_hits[static_cast<std::size_t>(e)]) {
      CUTCOVER_CHECK(q != pe, "cross interest inside one path");
      auto& entry = cross[{std::min(pe, q), std::max(pe, q)}];
      (pe < q ? entry.first : entry.second).push_back(e);
    }
    for (int q : down_hits[static_cast<std::size_t>(e)]) down[{pe, q}].push_back(e);
  }

  std::vector<InterestedPair> out;
  for (auto& [key, sides] : cross) {
    if (sides.first.empty() || sides.second.empty()) continue;
    InterestedPair ip;
    ip.kind = InterestedPair::Kind::cross;
    ip.p = key.first;
    ip.q = key.second;
    ip.p_edges = std::move(sides.first);
    ip.q_edges = std::move(sides.second);
    out.push_back(std::move(ip));
  }
  for (auto& [key, edges] : down) {
    InterestedPair ip;
    ip.kind = InterestedPair::Kind::down;
    ip.p = key.first;
    ip.q = key.second;
    ip.p_edges = std::move(edges);
    ip.q_edges = d.paths[static_cast<std::size_t>(key.second)];
    out.push_back(std::move(ip));
  }
  return out;
}

inline std::size_t interested_pair_size(const std::vector<InterestedPair>& pairs) {
  std::size_t total = 0;
  for (const auto& p : pairs) total += p.p_edges.size() + p.q_edges.size();
  return total;
}

// Exact minimum over all one- and two-edge cuts of the tree.
inline std::pair<TreeCut, double> min_1or2_respecting_cut(const CutOracle& o) {
  const auto& t = o.tree();
  std::pair<TreeCut, double> best{TreeCut{}, kInf};
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (v == t.root()) continue;
    const double val = o.cut_value(TreeCut::one(v));
    if (val < best.second) best = {TreeCut::one(v), val};
  }
  const PathDecomposition d = path_decomposition(t);
  for (const auto& path : d.paths) {
    auto cand = min_two_cut_in_path(path, o);
    if (cand.second < best.second) best = cand;
  }
  for (const auto& ip : interested_path_pairs(o, d)) {
    const PathMinor m = ip.minor(t);
    const ColumnMinima w = column_minima(m, o);
    for (int j = 1; j <= m.cols(); ++j)
      if (w.value[static_cast<std::size_t>(j - 1)] < best.second)
        best = {m.entry(w.row[static_cast<std::size_t>(j - 1)], j), w.value[static_cast<std::size_t>(j - 1)]};
  }
  return best;
}

struct TreeFocusReport {
  std::size_t one_edge = 0;
  std::size_t pairs = 0;
  std::size_t pair_edges = 0;
  std::size_t cross_cuts = 0;
  int passes = 0;
};

// Clears every one- and two-edge cut of the oracle's tree: one-edge cuts,
// then cuts inside each heavy path, then cuts spanning interested path
// pairs. In truncated mode a pass can leave cuts behind when an edge turns
// heavy mid-Focus, so passes repeat until one finds nothing.
inline TreeFocusReport focus_tree(CutOracle& o, MwuMonitor& mon) {
  const auto& t = o.tree();
  TreeFocusReport rep;
  const PathDecomposition d = path_decomposition(t);
  while (!o.state().exhausted()) {
    ++rep.passes;
    long long before = mon.stats.iterations;
    double threshold = o.state().threshold();
    std::vector<TreeCut> b1;
    for (int v = 0; v < t.num_vertices(); ++v)
      if (v != t.root() && o.cut_value(TreeCut::one(v)) < threshold) b1.push_back(TreeCut::one(v));
    rep.one_edge += b1.size();
    o.fast_focus(std::move(b1), mon);
    if (o.state().exhausted()) break;

    focus_multiple_paths(d.paths, o, mon);
    if (o.state().exhausted()) break;

    threshold = o.state().threshold();
    const auto pairs = interested_path_pairs(o, d);
    rep.pairs += pairs.size();
    rep.pair_edges += interested_pair_size(pairs);
    std::vector<std::vector<TreeCut>> found(pairs.size());
    parallel_for(0, pairs.size(), [&](std::size_t i) {
      found[i] = extract_cuts_in_path(pairs[i].minor(t), o, threshold).cuts;
    }, 8);
    std::vector<TreeCut> b2;
    for (const auto& f : found) b2.insert(b2.end(), f.begin(), f.end());
    rep.cross_cuts += b2.size();
    o.fast_focus(std::move(b2), mon);
    if (o.mode() == CutOracle::Mode::plain || mon.stats.iterations == before) break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Global minimum cuts through tree packings.

// Minimum over the packed trees of the one-or-two-edge cut minimum under
// weights u. Never below the true minimum cut; equal to it w.h.p.
inline double packed_min_cut(const Graph& g, std::span<const double> u, std::uint64_t seed,
                             const PackingParams& params = {}) {
  const TreePacking packing = pack_trees(g, u, seed, params);
  DualState probe(u.size(), 0.25);
  probe.w.assign(u.begin(), u.end());
  const std::vector<double> unit(u.size(), 1.0);
  double best = kInf;
  for (const auto& t : packing.trees) {
    CutOracle o(g, t, unit, 1, probe);
    best = std::min(best, min_1or2_respecting_cut(o).second);
  }
  return best;
}

inline constexpr double kVerifySlack = 1e-12;

struct EpochOptions {
  int exact_max_vertices = 400;  // exact minimum cut checks up to this size, packing passes above
  PackingParams packing;
};

// Per-epoch oracle for cut covering (plain mode) and the free-cut family
// (truncated mode). An epoch is cleared tree by tree over a fresh packing;
// a pass is accepted once the global minimum cut is certified at or above
// the threshold, exactly on small graphs, and on large ones by a fresh
// packing whose trees need no update.
class CutCoverDriver {
 public:
  using Mode = CutOracle::Mode;
  using LambdaInit = std::function<double(CutCoverDriver&, DualState&)>;

  CutCoverDriver(const Graph& g, std::span<const double> costs, int k, Mode mode, std::uint64_t seed,
                 const SolverOptions& opts, EpochOptions epoch = {})
      : g_(g), costs_(costs.begin(), costs.end()), k_(k), mode_(mode), seed_(seed), opts_(opts),
        epoch_(epoch) {
    CUTCOVER_CHECK(static_cast<int>(costs_.size()) == g.num_edges(), "cost length mismatch");
  }

  void set_lambda_init(LambdaInit init) { init_ = std::move(init); }

  const Graph& graph() const { return g_; }
  const std::vector<double>& costs() const { return costs_; }
  int k() const { return k_; }
  Mode mode() const { return mode_; }
  bool exact() const { return g_.num_vertices() <= epoch_.exact_max_vertices; }

  // Edge weights the cut threshold is compared against: v = w/c, capped at
  // the threshold in truncated mode, divided by k.
  std::vector<double> effective(const DualState& s, double cap = kInf) const {
    std::vector<double> u(costs_.size());
    for (std::size_t e = 0; e < u.size(); ++e) u[e] = std::min(s.w[e] / costs_[e], cap) / k_;
    return u;
  }

  std::vector<double> current_effective(const DualState& s) const {
    return effective(s, mode_ == Mode::truncated ? s.threshold() : kInf);
  }

  double min_cut(std::span<const double> u) {
    if (exact()) return exact_min_cut(g_, EdgeWeights(u.begin(), u.end())).value;
    return packed_min_cut(g_, u, next_seed(), epoch_.packing);
  }

  double initial_lambda(DualState& s) {
    if (init_) return init_(*this, s);
    // Plain mode: the smallest tree cut over one packing under w = 1.
    const auto u = effective(s);
    const TreePacking packing = pack_trees(g_, u, next_seed(), epoch_.packing);
    ++packings_;
    double best = kInf;
    for (const auto& t : packing.trees) {
      CutOracle o(g_, t, costs_, k_, s, mode_);
      best = std::min(best, min_1or2_respecting_cut(o).second);
    }
    if (exact()) best = std::min(best, exact_min_cut(g_, EdgeWeights(u.begin(), u.end())).value);
    return best / (1.0 + s.eps());
  }

  bool clear_epoch(DualState& s, MwuMonitor& mon) {
    for (int attempt = 0;; ++attempt) {
      if (s.exhausted()) return false;
      if (exact() && epoch_clear(s)) return true;
      if (attempt > opts_.max_retries)
        throw BudgetExceeded("epoch not cleared after " + std::to_string(opts_.max_retries) + " repacks");
      if (attempt > 0) ++mon.stats.retries;
      const long long before = mon.stats.iterations;
      const TreePacking packing = pack_trees(g_, current_effective(s), next_seed(), epoch_.packing);
      ++mon.stats.packings;
      ++packings_;
      for (const auto& t : packing.trees) {
        CutOracle o(g_, t, costs_, k_, s, mode_);
        const long long tree_before = mon.stats.iterations;
        focus_tree(o, mon);
        if (s.exhausted()) return false;
        // Once no global cut is small the remaining trees have nothing to do.
        if (exact() && mon.stats.iterations != tree_before && epoch_clear(s)) return true;
      }
      if (!exact() && mon.stats.iterations == before) return true;
    }
  }

  // Exact check that no cut is below the threshold. The relative slack only
  // absorbs summation-order rounding, e.g. k capped edges adding up to just
  // under k times the cap.
  bool epoch_clear(const DualState& s) const {
    const auto u = current_effective(s);
    return !(exact_min_cut(g_, EdgeWeights(u.begin(), u.end())).value < s.threshold() * (1.0 - kVerifySlack));
  }

  long long packings() const { return packings_; }

 private:
  std::uint64_t next_seed() { return mix64(seed_ ^ mix64(static_cast<std::uint64_t>(++draws_))); }

  const Graph& g_;
  std::vector<double> costs_;
  int k_;
  Mode mode_;
  std::uint64_t seed_;
  const SolverOptions& opts_;
  EpochOptions epoch_;
  LambdaInit init_;
  long long draws_ = 0;
  long long packings_ = 0;
};

// Internal MWU accuracy for a requested accuracy: the solver's guarantee
// (1+e)/(1-2e) stays within 1+eps for e = eps/4 and eps < 1/2.
inline constexpr double kAccuracyDivisor = 4.0;

inline SolverOptions options_for(double eps_target, SolverOptions base = {}) {
  if (!(eps_target > 0.0 && eps_target < 0.5)) throw ValidationError("eps must lie in (0, 0.5)");
  base.eps = eps_target / kAccuracyDivisor;
  return base;
}

struct CoverSolution {
  double bound = 0.0;           // c^T y
  std::vector<double> y;        // per-edge solution in original units
  SolveStats stats;
};

// Held-Karp bound: cut covering with demand 2 on every cut.
inline CoverSolution held_karp(const Graph& g, std::span<const double> costs, double eps_target,
                               std::uint64_t seed, SolverOptions base = {}, EpochOptions epoch = {}) {
  const SolverOptions opts = options_for(eps_target, std::move(base));
  CutCoverDriver driver(g, costs, 2, CutOracle::Mode::plain, seed, opts, epoch);
  SolveResult r = run_solver(static_cast<std::size_t>(g.num_edges()), opts, driver);
  CoverSolution out;
  out.y = extract_covering_solution(r.y, costs);
  out.bound = 0.0;
  for (std::size_t e = 0; e < out.y.size(); ++e) out.bound += costs[e] * out.y[e];
  out.stats = std::move(r.stats);
  return out;
}

}  // namespace cutcover

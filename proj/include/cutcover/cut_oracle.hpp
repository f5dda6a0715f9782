#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <compare>
#include <span>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/mwu.hpp"
#include "cutcover/spanning_tree.hpp"

namespace cutcover {

// A cut that shares one or two edges with a fixed spanning tree. Tree edges
// are named by their lower endpoint; b < 0 marks a one-edge cut.
struct TreeCut {
  int a = -1;
  int b = -1;

  static TreeCut one(int e) { return {e, -1}; }
  static TreeCut two(int e, int f) {
    CUTCOVER_CHECK(e != f, "tree cut edges must be distinct");
    return e < f ? TreeCut{e, f} : TreeCut{f, e};
  }
  bool single() const { return b < 0; }
  auto operator<=>(const TreeCut&) const = default;
};

struct Interval {
  int lo = 0;  // [lo, hi) over Euler positions
  int hi = 0;
  bool empty() const { return hi <= lo; }
};

// Vertex side of a tree cut as at most two disjoint Euler intervals.
inline std::vector<Interval> cut_intervals(const SpanningTree& t, TreeCut s) {
  CUTCOVER_CHECK(s.a >= 0 && s.a < t.num_vertices() && s.a != t.root(), "invalid tree edge");
  const Interval ia{t.tin(s.a), t.tout(s.a)};
  if (s.single()) return {ia};
  CUTCOVER_CHECK(s.b < t.num_vertices() && s.b != t.root(), "invalid tree edge");
  const Interval ib{t.tin(s.b), t.tout(s.b)};
  std::vector<Interval> out;
  if (t.contains(s.a, s.b)) {
    out = {{ia.lo, ib.lo}, {ib.hi, ia.hi}};
  } else if (t.contains(s.b, s.a)) {
    out = {{ib.lo, ia.lo}, {ia.hi, ib.hi}};
  } else {
    out = ia.lo < ib.lo ? std::vector<Interval>{ia, ib} : std::vector<Interval>{ib, ia};
  }
  std::erase_if(out, [](const Interval& i) { return i.empty(); });
  return out;
}

// Canonical node of the two-level range structure: id into the cached sums
// plus the slice of the owning x-node's point list it covers.
struct CanonicalNode {
  int id = 0;
  int begin = 0;
  int end = 0;
};

// Implicit column family of one spanning tree. Graph edges are points
// (min Euler position, max Euler position) stored in a range tree over x
// with a y-ordered segment tree per x-node; every y-node is a canonical edge
// set with cached light-weight sum, heavy count and minimum light cost.
//
// Per-edge weight is v = w/c. In truncated mode an edge is heavy once
// v >= (1+eps)*lambda and then counts as exactly that threshold; heavy edges
// carry no coefficient in the columns. Plain mode never truncates. All
// reported cut values are divided by k, i.e. they are in lambda units.
class CutOracle {
 public:
  enum class Mode { plain, truncated };

  CutOracle(const Graph& g, const SpanningTree& t, std::span<const double> costs, int k, DualState& state,
            Mode mode = Mode::plain)
      : g_(g), t_(t), costs_(costs.begin(), costs.end()), k_(k), state_(state), mode_(mode) {
    CUTCOVER_CHECK(k >= 1, "k must be positive");
    CUTCOVER_CHECK(static_cast<int>(costs.size()) == g.num_edges(), "cost length mismatch");
    CUTCOVER_CHECK(state.rows() == costs.size(), "state length mismatch");
    build();
    refresh();
  }

  const Graph& graph() const { return g_; }
  const SpanningTree& tree() const { return t_; }
  DualState& state() { return state_; }
  const DualState& state() const { return state_; }
  int k() const { return k_; }
  Mode mode() const { return mode_; }
  double rho() const { return mode_ == Mode::plain ? kInf : state_.threshold(); }
  long long queries() const { return queries_.load(); }
  int max_membership() const { return max_membership_; }
  bool heavy(int e) const { return heavy_[static_cast<std::size_t>(e)] != 0; }

  double edge_value(int e) const {
    return state_.w[static_cast<std::size_t>(e)] / costs_[static_cast<std::size_t>(e)];
  }

  // Reload every cached value from the current state (after rescaling or an
  // external weight change); reclassifies heavy edges.
  void refresh() {
    const double r = rho();
    for (int e = 0; e < g_.num_edges(); ++e) heavy_[static_cast<std::size_t>(e)] = edge_value(e) >= r;
    for (int e = 0; e < g_.num_edges(); ++e) write_leaves(e);
    for (int p = 1; p < 2 * xn_; ++p) {
      const int cnt = xcount_[static_cast<std::size_t>(p)];
      const int base = ybase_[static_cast<std::size_t>(p)];
      for (int q = cnt - 1; q >= 1; --q) pull(base, q);
    }
  }

  // ---- decomposition -----------------------------------------------------

  void decompose(TreeCut s, std::vector<CanonicalNode>& out) const {
    out.clear();
    for_each_rectangle(cut_intervals(t_, s), [&](Interval xs, Interval ys) { query_rect(xs, ys, out); });
  }

  std::vector<CanonicalNode> decompose(TreeCut s) const {
    std::vector<CanonicalNode> out;
    decompose(s, out);
    return out;
  }

  // Graph edges listed by a decomposition, in slice order.
  std::vector<int> edges_of(std::span<const CanonicalNode> nodes) const {
    std::vector<int> out;
    for (const auto& c : nodes)
      for (int i = c.begin; i < c.end; ++i) out.push_back(point_edge_[static_cast<std::size_t>(i)]);
    return out;
  }

  struct Aggregate {
    double light = 0.0;
    int heavy = 0;
    double min_light_cost = kInf;
  };

  Aggregate aggregate(std::span<const CanonicalNode> nodes) const {
    Aggregate a;
    for (const auto& c : nodes) {
      const auto id = static_cast<std::size_t>(c.id);
      a.light += light_[id];
      a.heavy += heavy_count_[id];
      a.min_light_cost = std::min(a.min_light_cost, min_cost_[id]);
    }
    return a;
  }

  Aggregate aggregate(TreeCut s) const {
    auto& nodes = scratch();
    decompose(s, nodes);
    return aggregate(nodes);
  }

  // Truncated cut weight divided by k.
  double cut_value(TreeCut s) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return value_of(aggregate(s));
  }

  // Normalized free-cut weight light/(k - heavy), infinite when heavy >= k.
  double normalized_value(TreeCut s) const {
    const Aggregate a = aggregate(s);
    return a.heavy >= k_ ? kInf : a.light / (k_ - a.heavy);
  }

  bool is_small(TreeCut s) const { return cut_value(s) < state_.threshold(); }

  // Weight of graph edges with one endpoint in a and the other in b. The
  // interval lists must be disjoint from each other.
  double range_weight(std::span<const Interval> a, std::span<const Interval> b) const {
    Aggregate agg;
    for (const auto& i : a)
      for (const auto& j : b) {
        if (i.empty() || j.empty()) continue;
        if (i.hi <= j.lo)
          add_rect(i, j, agg);
        else if (j.hi <= i.lo)
          add_rect(j, i, agg);
        else
          throw ContractViolation("range_weight needs disjoint intervals");
      }
    return raw_of(agg);
  }

  double range_weight(Interval a, Interval b) const {
    if (a.lo == b.lo && a.hi == b.hi) return internal_weight(a);
    return range_weight(std::span<const Interval>(&a, 1), std::span<const Interval>(&b, 1));
  }

  // Convention for range_weight(I, I): weight of edges with both ends in I.
  double internal_weight(Interval a) const {
    Aggregate agg;
    if (!a.empty()) add_rect(a, a, agg);
    return raw_of(agg);
  }

  // ---- batched Focus -----------------------------------------------------

  struct Batch {
    std::vector<TreeCut> cuts;
    std::vector<std::vector<CanonicalNode>> nodes;
    std::vector<double> coef_scale;  // 1/(k - heavy)
    std::vector<double> max_coef;    // coef_scale / min light cost
  };

  // Wires each (deduplicated) cut to its canonical nodes.
  Batch augment(std::vector<TreeCut> cuts) const {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Batch b;
    b.cuts = std::move(cuts);
    b.nodes.resize(b.cuts.size());
    b.coef_scale.resize(b.cuts.size());
    b.max_coef.resize(b.cuts.size());
    for (std::size_t j = 0; j < b.cuts.size(); ++j) {
      decompose(b.cuts[j], b.nodes[j]);
      const Aggregate a = aggregate(b.nodes[j]);
      CUTCOVER_CHECK(a.heavy < k_, "column has k or more heavy edges");
      b.coef_scale[j] = 1.0 / (k_ - a.heavy);
      if (!(a.min_light_cost < kInf)) throw InfeasibleError("column without a light edge");
      b.max_coef[j] = b.coef_scale[j] / a.min_light_cost;
    }
    return b;
  }

  // Focus on the given tree cuts. Columns keep the heavy set they had on
  // entry; edges that crossed the threshold are reclassified on return.
  void fast_focus(std::vector<TreeCut> cuts, MwuMonitor& mon) {
    if (cuts.empty() || state_.exhausted()) return;
    Batch batch = augment(std::move(cuts));
    const std::size_t count = batch.cuts.size();
    auto column_weight = [&](std::size_t j) {
      double light = 0.0;
      for (const auto& c : batch.nodes[j]) light += light_[static_cast<std::size_t>(c.id)];
      return light * batch.coef_scale[j];
    };
    {
      const double lim = state_.threshold();
      for (std::size_t j = 0; j < count; ++j)
        if (!(column_weight(j) < lim)) throw ContractViolation("focus column already at or above (1+eps)*lambda");
    }
    mon.begin_focus(count);
    const double eps = state_.eps();
    std::vector<double> x(count, 0.0), g(count, 0.0);
    std::vector<std::size_t> active(count);
    for (std::size_t j = 0; j < count; ++j) active[j] = j;
    std::vector<int> touched, all_touched;
    std::vector<int> live_nodes;
    bool first = true;

    while (!active.empty() && !state_.exhausted()) {
      // Push per-column amounts onto canonical nodes, then onto edges.
      auto push = [&](auto amount_of) {
        live_nodes.clear();
        for (std::size_t j : active) {
          const double amount = amount_of(j) * batch.coef_scale[j];
          for (const auto& c : batch.nodes[j]) {
            const auto id = static_cast<std::size_t>(c.id);
            if (!node_live_[id]) {
              node_live_[id] = 1;
              node_slice_[id] = {c.begin, c.end};
              live_nodes.push_back(c.id);
            }
            node_acc_[id] += amount;
          }
        }
        touched.clear();
        for (int id : live_nodes) {
          const auto nid = static_cast<std::size_t>(id);
          const double amount = node_acc_[nid];
          for (int i = node_slice_[nid].first; i < node_slice_[nid].second; ++i) {
            const int e = point_edge_[static_cast<std::size_t>(i)];
            const auto ue = static_cast<std::size_t>(e);
            if (heavy_[ue]) continue;
            if (!edge_live_[ue]) {
              edge_live_[ue] = 1;
              touched.push_back(e);
            }
            edge_acc_[ue] += amount;
          }
          node_acc_[nid] = 0.0;
          node_live_[nid] = 0;
        }
        std::sort(touched.begin(), touched.end());
        for (int e : touched) edge_acc_[static_cast<std::size_t>(e)] /= costs_[static_cast<std::size_t>(e)];
      };

      double delta = 0.0;
      if (first) {
        const double share = eps / static_cast<double>(active.size());
        for (std::size_t j : active) g[j] = share / batch.max_coef[j];
        push([&](std::size_t j) { return g[j]; });
        first = false;
      } else {
        push([&](std::size_t j) { return x[j]; });
        double mx = 0.0;
        for (int e : touched) mx = std::max(mx, edge_acc_[static_cast<std::size_t>(e)]);
        delta = eps / mx;
        for (std::size_t j : active) g[j] = delta * x[j];
        for (int e : touched) edge_acc_[static_cast<std::size_t>(e)] *= delta;
      }
      double sum_g = 0.0;
      for (std::size_t j : active) {
        x[j] += g[j];
        sum_g += g[j];
      }
      mon.before_update(state_, sum_g);
      for (int e : touched) {
        const auto ue = static_cast<std::size_t>(e);
        state_.bump(ue, edge_acc_[ue]);
        edge_acc_[ue] = 0.0;
        edge_live_[ue] = 0;
        if (!ever_touched_[ue]) {
          ever_touched_[ue] = 1;
          all_touched.push_back(e);
        }
      }
      mon.after_update(state_, touched, active.size(), delta);
      if (state_.rescale_pending()) {
        state_.rescale();
        refresh_values();
      } else {
        for (int e : touched) update_edge(e);
      }
      const double lim = state_.threshold();
      std::erase_if(active, [&](std::size_t j) { return !(column_weight(j) < lim); });
    }

    for (int e : all_touched) {
      const auto ue = static_cast<std::size_t>(e);
      ever_touched_[ue] = 0;
      if (mode_ == Mode::truncated && !heavy_[ue] && edge_value(e) >= rho()) {
        heavy_[ue] = 1;
        update_edge(e);
      }
    }
  }

 private:
  // Truncated weight divided by k; additive over disjoint edge sets.
  double raw_of(const Aggregate& a) const {
    return a.heavy == 0 ? a.light / k_ : (a.light + a.heavy * rho()) / k_;
  }

  double value_of(const Aggregate& a) const {
    const double value = raw_of(a);
    // k heavy edges already reach the cap; keep rounding from undercutting it.
    return a.heavy >= k_ ? std::max(value, rho()) : value;
  }

  template <class Fn>
  static void for_each_rectangle(const std::vector<Interval>& inside, int n, Fn&& fn) {
    // Alternate inside/outside pieces covering [0, n).
    std::array<Interval, 5> pieces{};
    std::array<char, 5> in{};
    int count = 0, cursor = 0;
    for (const auto& i : inside) {
      if (cursor < i.lo) {
        pieces[static_cast<std::size_t>(count)] = {cursor, i.lo};
        in[static_cast<std::size_t>(count++)] = 0;
      }
      pieces[static_cast<std::size_t>(count)] = i;
      in[static_cast<std::size_t>(count++)] = 1;
      cursor = i.hi;
    }
    if (cursor < n) {
      pieces[static_cast<std::size_t>(count)] = {cursor, n};
      in[static_cast<std::size_t>(count++)] = 0;
    }
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j)
        if (in[static_cast<std::size_t>(i)] != in[static_cast<std::size_t>(j)])
          fn(pieces[static_cast<std::size_t>(i)], pieces[static_cast<std::size_t>(j)]);
  }

  template <class Fn>
  void for_each_rectangle(const std::vector<Interval>& inside, Fn&& fn) const {
    for_each_rectangle(inside, t_.num_vertices(), fn);
  }

  // Canonical nodes covering points with x in xs and y in ys.
  void query_rect(Interval xs, Interval ys, std::vector<CanonicalNode>& out) const {
    if (xs.empty() || ys.empty()) return;
    int l = xs.lo + xn_, r = xs.hi + xn_;
    auto visit = [&](int p) {
      const int cnt = xcount_[static_cast<std::size_t>(p)];
      if (cnt == 0) return;
      const int pb = pbase_[static_cast<std::size_t>(p)];
      const int* ys_begin = point_y_.data() + pb;
      const int lo = static_cast<int>(std::lower_bound(ys_begin, ys_begin + cnt, ys.lo) - ys_begin);
      const int hi = static_cast<int>(std::lower_bound(ys_begin + lo, ys_begin + cnt, ys.hi) - ys_begin);
      if (lo >= hi) return;
      const int yb = ybase_[static_cast<std::size_t>(p)];
      int a = lo + cnt, b = hi + cnt, h = 0;
      auto emit = [&](int q) {
        out.push_back({yb + q, pb + (q << h) - cnt, pb + ((q + 1) << h) - cnt});
      };
      while (a < b) {
        if (a & 1) emit(a++);
        if (b & 1) emit(--b);
        a >>= 1;
        b >>= 1;
        ++h;
      }
    };
    while (l < r) {
      if (l & 1) visit(l++);
      if (r & 1) visit(--r);
      l >>= 1;
      r >>= 1;
    }
  }

  void add_rect(Interval xs, Interval ys, Aggregate& agg) const {
    auto& nodes = scratch();
    nodes.clear();
    query_rect(xs, ys, nodes);
    const Aggregate a = aggregate(nodes);
    agg.light += a.light;
    agg.heavy += a.heavy;
    agg.min_light_cost = std::min(agg.min_light_cost, a.min_light_cost);
  }

  void build() {
    const int n = t_.num_vertices();
    const int m = g_.num_edges();
    xn_ = n;
    std::vector<int> px(static_cast<std::size_t>(m)), py(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      const int a = t_.tin(g_.edge(e).u), b = t_.tin(g_.edge(e).v);
      px[static_cast<std::size_t>(e)] = std::min(a, b);
      py[static_cast<std::size_t>(e)] = std::max(a, b);
    }
    const auto nodes = static_cast<std::size_t>(2 * xn_);
    xcount_.assign(nodes, 0);
    for (int e = 0; e < m; ++e) ++xcount_[static_cast<std::size_t>(xn_ + px[static_cast<std::size_t>(e)])];
    for (int p = xn_ - 1; p >= 1; --p)
      xcount_[static_cast<std::size_t>(p)] = xcount_[static_cast<std::size_t>(2 * p)] + xcount_[static_cast<std::size_t>(2 * p + 1)];
    pbase_.assign(nodes, 0);
    ybase_.assign(nodes, 0);
    int total_points = 0, total_y = 0;
    for (int p = 1; p < 2 * xn_; ++p) {
      pbase_[static_cast<std::size_t>(p)] = total_points;
      ybase_[static_cast<std::size_t>(p)] = total_y;
      total_points += xcount_[static_cast<std::size_t>(p)];
      total_y += 2 * xcount_[static_cast<std::size_t>(p)];
    }
    point_edge_.assign(static_cast<std::size_t>(total_points), 0);
    point_y_.assign(static_cast<std::size_t>(total_points), 0);
    std::vector<int> fill(nodes, 0);
    for (int e = 0; e < m; ++e) {
      const auto p = static_cast<std::size_t>(xn_ + px[static_cast<std::size_t>(e)]);
      point_edge_[static_cast<std::size_t>(pbase_[p] + fill[p]++)] = e;
    }
    auto by_y = [&](int a, int b) {
      const int ya = py[static_cast<std::size_t>(a)], yb = py[static_cast<std::size_t>(b)];
      return ya < yb || (ya == yb && a < b);
    };
    for (int p = xn_; p < 2 * xn_; ++p) {
      auto* first = point_edge_.data() + pbase_[static_cast<std::size_t>(p)];
      std::sort(first, first + xcount_[static_cast<std::size_t>(p)], by_y);
    }
    for (int p = xn_ - 1; p >= 1; --p) {
      const auto l = static_cast<std::size_t>(2 * p), r = static_cast<std::size_t>(2 * p + 1);
      const int* lb = point_edge_.data() + pbase_[l];
      const int* rb = point_edge_.data() + pbase_[r];
      std::merge(lb, lb + xcount_[l], rb, rb + xcount_[r], point_edge_.data() + pbase_[static_cast<std::size_t>(p)], by_y);
    }
    for (int i = 0; i < total_points; ++i)
      point_y_[static_cast<std::size_t>(i)] = py[static_cast<std::size_t>(point_edge_[static_cast<std::size_t>(i)])];

    // Per-edge y-leaf slots, one per x-node on the edge's x-path.
    slot_begin_.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int p = 1; p < 2 * xn_; ++p)
      for (int i = 0; i < xcount_[static_cast<std::size_t>(p)]; ++i)
        ++slot_begin_[static_cast<std::size_t>(point_edge_[static_cast<std::size_t>(pbase_[static_cast<std::size_t>(p)] + i)]) + 1];
    for (int e = 0; e < m; ++e) slot_begin_[static_cast<std::size_t>(e) + 1] += slot_begin_[static_cast<std::size_t>(e)];
    slots_.assign(static_cast<std::size_t>(slot_begin_.back()), {});
    std::vector<int> cursor(slot_begin_.begin(), slot_begin_.end() - 1);
    for (int p = 1; p < 2 * xn_; ++p) {
      const int cnt = xcount_[static_cast<std::size_t>(p)];
      for (int i = 0; i < cnt; ++i) {
        const int e = point_edge_[static_cast<std::size_t>(pbase_[static_cast<std::size_t>(p)] + i)];
        slots_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e)]++)] = {p, cnt + i};
      }
    }
    max_membership_ = 0;
    for (int e = 0; e < m; ++e) {
      int members = 0;
      for (int s = slot_begin_[static_cast<std::size_t>(e)]; s < slot_begin_[static_cast<std::size_t>(e) + 1]; ++s)
        members += std::bit_width(static_cast<unsigned>(slots_[static_cast<std::size_t>(s)].second));
      max_membership_ = std::max(max_membership_, members);
    }
    const double lg = std::log2(static_cast<double>(std::max(n, 2)));
    CUTCOVER_CHECK(max_membership_ <= 4.0 * lg * lg + 8.0, "canonical membership exceeds its bound");

    light_.assign(static_cast<std::size_t>(total_y), 0.0);
    heavy_count_.assign(static_cast<std::size_t>(total_y), 0);
    min_cost_.assign(static_cast<std::size_t>(total_y), kInf);
    node_acc_.assign(static_cast<std::size_t>(total_y), 0.0);
    node_live_.assign(static_cast<std::size_t>(total_y), 0);
    node_slice_.assign(static_cast<std::size_t>(total_y), {0, 0});
    heavy_.assign(static_cast<std::size_t>(m), 0);
    edge_acc_.assign(static_cast<std::size_t>(m), 0.0);
    edge_live_.assign(static_cast<std::size_t>(m), 0);
    ever_touched_.assign(static_cast<std::size_t>(m), 0);
  }

  void write_leaves(int e) {
    const auto ue = static_cast<std::size_t>(e);
    const bool h = heavy_[ue] != 0;
    const double v = h ? 0.0 : edge_value(e);
    const double c = h ? kInf : costs_[ue];
    for (int s = slot_begin_[ue]; s < slot_begin_[ue + 1]; ++s) {
      const auto [p, q] = slots_[static_cast<std::size_t>(s)];
      const auto id = static_cast<std::size_t>(ybase_[static_cast<std::size_t>(p)] + q);
      light_[id] = v;
      heavy_count_[id] = h ? 1 : 0;
      min_cost_[id] = c;
    }
  }

  void pull(int base, int q) {
    const auto id = static_cast<std::size_t>(base + q);
    const auto l = static_cast<std::size_t>(base + 2 * q), r = l + 1;
    light_[id] = light_[l] + light_[r];
    heavy_count_[id] = heavy_count_[l] + heavy_count_[r];
    min_cost_[id] = std::min(min_cost_[l], min_cost_[r]);
  }

  void update_edge(int e) {
    write_leaves(e);
    const auto ue = static_cast<std::size_t>(e);
    for (int s = slot_begin_[ue]; s < slot_begin_[ue + 1]; ++s) {
      const auto [p, q0] = slots_[static_cast<std::size_t>(s)];
      const int base = ybase_[static_cast<std::size_t>(p)];
      for (int q = q0 >> 1; q >= 1; q >>= 1) pull(base, q);
    }
  }

  // Reload values without reclassifying (weights were only rescaled).
  void refresh_values() {
    for (int e = 0; e < g_.num_edges(); ++e) write_leaves(e);
    for (int p = 1; p < 2 * xn_; ++p) {
      const int cnt = xcount_[static_cast<std::size_t>(p)];
      const int base = ybase_[static_cast<std::size_t>(p)];
      for (int q = cnt - 1; q >= 1; --q) pull(base, q);
    }
  }

  const Graph& g_;
  const SpanningTree& t_;
  std::vector<double> costs_;
  int k_;
  DualState& state_;
  Mode mode_;

  int xn_ = 0;
  std::vector<int> xcount_, pbase_, ybase_;
  std::vector<int> point_edge_, point_y_;
  std::vector<int> slot_begin_;
  std::vector<std::pair<int, int>> slots_;  // (x-node, y-leaf index)
  int max_membership_ = 0;

  std::vector<double> light_;
  std::vector<int> heavy_count_;
  std::vector<double> min_cost_;
  std::vector<char> heavy_;

  std::vector<double> node_acc_;
  std::vector<char> node_live_;
  std::vector<std::pair<int, int>> node_slice_;
  std::vector<double> edge_acc_;
  std::vector<char> edge_live_;
  std::vector<char> ever_touched_;

  static std::vector<CanonicalNode>& scratch() {
    thread_local std::vector<CanonicalNode> nodes;
    return nodes;
  }

  mutable std::atomic<long long> queries_{0};
};

}  // namespace cutcover

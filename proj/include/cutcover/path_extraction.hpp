#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/cut_oracle.hpp"
#include "cutcover/mwu.hpp"

namespace cutcover {

// A path obtained from the tree by contraction, given by its uncontracted
// tree edges from left to right. The root sits between edges[root - 1] and
// edges[root].
struct PathMinor {
  std::vector<int> edges;
  int root = 0;

  int rows() const { return root; }
  int cols() const { return static_cast<int>(edges.size()) - root; }
  // Row i and column j are 1-based and counted outward from the root.
  int row_edge(int i) const { return edges[static_cast<std::size_t>(root - i)]; }
  int col_edge(int j) const { return edges[static_cast<std::size_t>(root - 1 + j)]; }
  TreeCut entry(int i, int j) const { return TreeCut::two(row_edge(i), col_edge(j)); }
};

struct ColumnMinima {
  std::vector<int> row;       // row[j-1] = minimizing row of column j, ties to the larger row
  std::vector<double> value;  // value[j-1] = that minimum
  long long queries = 0;
};

inline void require_both_sides(const PathMinor& p) {
  if (p.rows() < 1 || p.cols() < 1) throw ValidationError("path minor needs an edge on each side of the root");
}

// Relative slack used when comparing matrix entries, so that rounding in the
// canonical sums cannot flip a tie.
inline bool nearly_le(double a, double b) { return a <= b + 1e-12 * (std::abs(a) + std::abs(b)); }

// Minimizing rows are non-decreasing in the column index, so the middle
// column's minimizer splits the row range for the two halves.
inline ColumnMinima column_minima(const PathMinor& p, const CutOracle& oracle) {
  require_both_sides(p);
  const int rows = p.rows(), cols = p.cols();
  ColumnMinima out;
  out.row.assign(static_cast<std::size_t>(cols), 0);
  out.value.assign(static_cast<std::size_t>(cols), kInf);
  struct Frame {
    int jlo, jhi, ilo, ihi;
  };
  std::vector<Frame> stack{{1, cols, 1, rows}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.jlo > f.jhi) continue;
    const int j = (f.jlo + f.jhi) / 2;
    int arg = f.ilo;
    double best = kInf;
    for (int i = f.ilo; i <= f.ihi; ++i) {
      const double v = oracle.cut_value(p.entry(i, j));
      ++out.queries;
      if (nearly_le(v, best)) {
        arg = i;
        best = std::min(best, v);
      }
    }
    out.row[static_cast<std::size_t>(j - 1)] = arg;
    out.value[static_cast<std::size_t>(j - 1)] = best;
    stack.push_back({f.jlo, j - 1, f.ilo, arg});
    stack.push_back({j + 1, f.jhi, arg, f.ihi});
  }
  return out;
}

struct Extraction {
  std::vector<TreeCut> cuts;
  long long queries = 0;
  std::size_t candidates = 0;
};

inline double extraction_query_budget(int rows, int cols) {
  const double s = rows + cols;
  return 4.0 * s * std::log2(s) + 16.0;
}

// Root-crossing two-edge cuts of the minor below threshold. Complete when no
// two-edge cut on one side of the root is below threshold: the small entries
// then form a staircase around the column minima.
inline Extraction extract_cuts_in_path(const PathMinor& p, const CutOracle& oracle, double threshold) {
  require_both_sides(p);
  const ColumnMinima w = column_minima(p, oracle);
  Extraction out;
  out.queries = w.queries;
  std::vector<int> live;
  for (int j = 1; j <= p.cols(); ++j)
    if (w.value[static_cast<std::size_t>(j - 1)] < threshold) live.push_back(j);
  for (std::size_t s = 0; s < live.size(); ++s) {
    const int j = live[s];
    const int lo = s == 0 ? 1 : w.row[static_cast<std::size_t>(live[s - 1] - 1)];
    const int hi = s + 1 == live.size() ? p.rows() : w.row[static_cast<std::size_t>(live[s + 1] - 1)];
    const int own = w.row[static_cast<std::size_t>(j - 1)];
    for (int i = lo; i <= hi; ++i) {
      ++out.candidates;
      double v;
      if (i == own) {
        v = w.value[static_cast<std::size_t>(j - 1)];
      } else {
        v = oracle.cut_value(p.entry(i, j));
        ++out.queries;
      }
      if (v < threshold) out.cuts.push_back(p.entry(i, j));
    }
  }
  const auto len = static_cast<double>(p.edges.size());
  CUTCOVER_CHECK(static_cast<double>(out.cuts.size()) <= 4.0 * (len + 2.0), "extraction returned too many cuts");
  CUTCOVER_CHECK(static_cast<double>(out.queries) <= extraction_query_budget(p.rows(), p.cols()),
                 "extraction exceeded its query budget");
  return out;
}

// ---------------------------------------------------------------------------
// Balanced recursion over a path: node [a, b] splits into [a, m] and
// [m+1, b] with m = (a+b)/2 and is rooted after edge m. Nodes of at most
// three edges are leaves and are searched exhaustively.

struct RecursionNode {
  int a = 0;
  int b = 0;  // inclusive edge indices
  int height = 0;
  bool leaf() const { return b - a + 1 <= 3; }
};

inline std::vector<RecursionNode> recursion_nodes(int length) {
  std::vector<RecursionNode> out;
  if (length < 2) return out;
  // Post-order so that heights are known when a parent is emitted.
  struct Frame {
    int a, b;
    bool expanded;
  };
  std::vector<Frame> stack{{0, length - 1, false}};
  std::vector<int> heights;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const int len = f.b - f.a + 1;
    if (len <= 3) {
      if (len >= 2) out.push_back({f.a, f.b, 0});
      heights.push_back(0);
      continue;
    }
    const int m = (f.a + f.b) / 2;
    if (!f.expanded) {
      stack.push_back({f.a, f.b, true});
      stack.push_back({m + 1, f.b, false});
      stack.push_back({f.a, m, false});
      continue;
    }
    const int hl = heights[heights.size() - 2], hr = heights.back();
    heights.pop_back();
    heights.pop_back();
    const int h = std::max(hl, hr) + 1;
    out.push_back({f.a, f.b, h});
    heights.push_back(h);
  }
  return out;
}

inline PathMinor node_minor(const std::vector<int>& path, const RecursionNode& node) {
  PathMinor p;
  p.edges.assign(path.begin() + node.a, path.begin() + node.b + 1);
  p.root = (node.a + node.b) / 2 - node.a + 1;
  return p;
}

// Small cuts found at one recursion node.
inline void collect_node_cuts(const std::vector<int>& path, const RecursionNode& node, const CutOracle& oracle,
                              double threshold, std::vector<TreeCut>& out) {
  if (node.leaf()) {
    for (int i = node.a; i <= node.b; ++i)
      for (int j = i + 1; j <= node.b; ++j) {
        TreeCut s = TreeCut::two(path[static_cast<std::size_t>(i)], path[static_cast<std::size_t>(j)]);
        if (oracle.cut_value(s) < threshold) out.push_back(s);
      }
    return;
  }
  Extraction ex = extract_cuts_in_path(node_minor(path, node), oracle, threshold);
  out.insert(out.end(), ex.cuts.begin(), ex.cuts.end());
}

// Clears every two-edge cut within each path: level by level from the
// leaves up, one Focus call per level over the union of all paths.
inline void focus_multiple_paths(const std::vector<std::vector<int>>& paths, CutOracle& oracle, MwuMonitor& mon) {
  std::vector<std::vector<RecursionNode>> nodes(paths.size());
  int top = -1;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    nodes[p] = recursion_nodes(static_cast<int>(paths[p].size()));
    for (const auto& n : nodes[p]) top = std::max(top, n.height);
  }
  for (int h = 0; h <= top; ++h) {
    if (oracle.state().exhausted()) return;
    const double threshold = oracle.state().threshold();
    std::vector<std::pair<std::size_t, const RecursionNode*>> level;
    for (std::size_t p = 0; p < paths.size(); ++p)
      for (const auto& n : nodes[p])
        if (n.height == h) level.emplace_back(p, &n);
    std::vector<std::vector<TreeCut>> found(level.size());
    parallel_for(0, level.size(), [&](std::size_t i) {
      collect_node_cuts(paths[level[i].first], *level[i].second, oracle, threshold, found[i]);
    }, 16);
    std::vector<TreeCut> batch;
    for (const auto& f : found) batch.insert(batch.end(), f.begin(), f.end());
    oracle.fast_focus(std::move(batch), mon);
  }
}

inline void focus_path(const std::vector<int>& path, CutOracle& oracle, MwuMonitor& mon) {
  focus_multiple_paths({path}, oracle, mon);
}

// Exact minimum two-edge cut within a path (all pairs of its edges).
inline std::pair<TreeCut, double> min_two_cut_in_path(const std::vector<int>& path, const CutOracle& oracle) {
  std::pair<TreeCut, double> best{TreeCut{}, kInf};
  for (const auto& node : recursion_nodes(static_cast<int>(path.size()))) {
    if (node.leaf()) {
      for (int i = node.a; i <= node.b; ++i)
        for (int j = i + 1; j <= node.b; ++j) {
          TreeCut s = TreeCut::two(path[static_cast<std::size_t>(i)], path[static_cast<std::size_t>(j)]);
          const double v = oracle.cut_value(s);
          if (v < best.second) best = {s, v};
        }
      continue;
    }
    const PathMinor p = node_minor(path, node);
    const ColumnMinima w = column_minima(p, oracle);
    for (int j = 1; j <= p.cols(); ++j)
      if (w.value[static_cast<std::size_t>(j - 1)] < best.second)
        best = {p.entry(w.row[static_cast<std::size_t>(j - 1)], j), w.value[static_cast<std::size_t>(j - 1)]};
  }
  return best;
}

}  // namespace cutcover

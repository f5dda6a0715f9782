#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/graph.hpp"
#include "cutcover/spanning_tree.hpp"

namespace cutcover {

struct PackingParams {
  double trees_per_log = 3.0;   // output size ceil(3 ln n)
  double rounds_per_log = 12.0; // greedy rounds ceil(12 ln n / accuracy^2)
  double accuracy = 0.5;
};

struct TreePacking {
  std::vector<SpanningTree> trees;
  int rounds = 0;
};

namespace detail {
struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
  std::vector<int> parent;
};
}  // namespace detail

// Greedy fractional packing: each round takes a minimum spanning tree under
// key load/u (ties by edge id) and adds one unit of load to its edges. The
// output trees are the rounds selected by the seed.
inline TreePacking pack_trees(const Graph& g, std::span<const double> u, std::uint64_t seed,
                              const PackingParams& params = {}) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  CUTCOVER_CHECK(static_cast<int>(u.size()) == m, "weight length mismatch");
  const double ln_n = std::log(static_cast<double>(n));
  const int count = std::max(1, static_cast<int>(std::ceil(params.trees_per_log * ln_n)));
  const int rounds = std::max(count, static_cast<int>(std::ceil(params.rounds_per_log * ln_n /
                                                                (params.accuracy * params.accuracy))));
  CounterRng rng(seed, 0x7ac3);
  std::vector<int> picks(static_cast<std::size_t>(count));
  for (auto& r : picks) r = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(rounds)));
  std::sort(picks.begin(), picks.end());

  std::vector<double> load(static_cast<std::size_t>(m), 0.0);
  std::vector<double> keys(static_cast<std::size_t>(m), 0.0);
  auto rekey = [&](int e) {
    const auto ue = static_cast<std::size_t>(e);
    keys[ue] = u[ue] > 0.0 ? load[ue] / u[ue] : (load[ue] > 0.0 ? kInf : 0.0);
  };
  auto less = [&](int a, int b) {
    const double ka = keys[static_cast<std::size_t>(a)], kb = keys[static_cast<std::size_t>(b)];
    return ka < kb || (ka == kb && a < b);
  };
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);

  TreePacking out;
  out.rounds = rounds;
  std::vector<int> tree;
  std::vector<char> in_tree(static_cast<std::size_t>(m), 0);
  std::vector<int> rest, merged;
  std::size_t next_pick = 0;
  detail::DisjointSets ds(n);
  for (int round = 0; round < rounds && next_pick < picks.size(); ++round) {
    std::iota(ds.parent.begin(), ds.parent.end(), 0);
    tree.clear();
    for (int e : order) {
      if (ds.unite(g.edge(e).u, g.edge(e).v)) {
        tree.push_back(e);
        if (static_cast<int>(tree.size()) == n - 1) break;
      }
    }
    while (next_pick < picks.size() && picks[next_pick] == round) {
      out.trees.emplace_back(g, tree);
      ++next_pick;
    }
    // Re-sort: only tree edges changed key, so merge them back in.
    for (int e : tree) {
      load[static_cast<std::size_t>(e)] += 1.0;
      rekey(e);
      in_tree[static_cast<std::size_t>(e)] = 1;
    }
    rest.clear();
    for (int e : order)
      if (!in_tree[static_cast<std::size_t>(e)]) rest.push_back(e);
    std::sort(tree.begin(), tree.end(), less);
    merged.resize(order.size());
    std::merge(rest.begin(), rest.end(), tree.begin(), tree.end(), merged.begin(), less);
    order.swap(merged);
    for (int e : tree) in_tree[static_cast<std::size_t>(e)] = 0;
  }
  return out;
}

// Number of tree edges crossing the cut given by a 0/1 indicator.
inline int tree_edges_crossing(const SpanningTree& t, const std::vector<char>& in) {
  int count = 0;
  for (int v = 0; v < t.num_vertices(); ++v)
    if (v != t.root() && in[static_cast<std::size_t>(v)] != in[static_cast<std::size_t>(t.parent(v))]) ++count;
  return count;
}

// Every cut of value at most (1+eps)*mincut shares at most two edges with
// some packed tree. Exhaustive, small graphs only.
inline bool verify_packing(const Graph& g, std::span<const double> u, const TreePacking& packing, double eps) {
  EdgeWeights w(u.begin(), u.end());
  const double best = exact_min_cut_bruteforce(g, w).value;
  const double limit = (1.0 + eps) * best * (1.0 + 1e-12);
  bool ok = true;
  for_each_cut(g, w, [&](const std::vector<char>& in, double value) {
    if (!ok || value > limit) return;
    for (const auto& t : packing.trees)
      if (tree_edges_crossing(t, in) <= 2) return;
    ok = false;
  });
  return ok;
}

}  // namespace cutcover

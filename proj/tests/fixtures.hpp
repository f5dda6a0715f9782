#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cutcover/cutcover.hpp"
#include "cutcover/reference.hpp"

namespace fixtures {

using cutcover::Edge;
using cutcover::Graph;

inline Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

inline Graph single_edge(double cost = 5.0) { return Graph(2, {{0, 1, cost}}); }

inline Graph cycle(int n, double cost = 1.0) {
  std::vector<Edge> es;
  for (int v = 0; v < n; ++v) es.push_back({v, (v + 1) % n, cost});
  return Graph(n, es);
}

inline Graph complete(int n, double cost = 1.0) {
  std::vector<Edge> es;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) es.push_back({a, b, cost});
  return Graph(n, es);
}

inline Graph path_graph(int n) {
  std::vector<Edge> es;
  for (int v = 0; v + 1 < n; ++v) es.push_back({v, v + 1, 1.0});
  return Graph(n, es);
}

// Five vertices on a path v1..v5 (edges e1..e4, ids 0..3) plus the chord
// v1-v5 (id 4). The path itself is the spanning tree, rooted at v1, so tree
// edge e_i is named by vertex i.
inline Graph c5_chord() { return Graph(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {0, 4, 1}}); }
inline const std::vector<double> kC5Weights{5, 1, 1, 5, 1};
inline cutcover::SpanningTree c5_path_tree(const Graph& g) {
  const std::vector<int> ids{0, 1, 2, 3};
  return cutcover::SpanningTree(g, ids, 0);
}

inline std::vector<Edge> petersen_edges() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.push_back({i, (i + 1) % 5, 1});
    es.push_back({i, i + 5, 1});
    es.push_back({5 + i, 5 + (i + 2) % 5, 1});
  }
  return es;
}

// Petersen graph with `removed` edges deleted (every third edge id, which
// keeps it connected for removed <= 3).
inline Graph petersen_minus(int removed) {
  auto es = petersen_edges();
  for (int r = 0; r < removed; ++r) es.erase(es.begin() + 3 * r);
  return Graph(10, es);
}

// Connected random multigraph: a random spanning tree plus extra random
// edges, integer costs in [1, 10].
inline Graph random_graph(std::uint64_t seed, int n_lo, int n_hi, int m_max) {
  cutcover::CounterRng rng(seed, 0x51);
  const int n = n_lo + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_hi - n_lo + 1)));
  const int m_cap = std::min(m_max, n * (n - 1) / 2 + 2);
  const int m = (n - 1) + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(std::max(1, m_cap - n + 2))));
  std::vector<Edge> es;
  auto cost = [&] { return static_cast<double>(1 + rng.uniform_int(10)); };
  for (int v = 1; v < n; ++v) es.push_back({static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(v))), v, cost()});
  while (static_cast<int>(es.size()) < std::min(m, m_max)) {
    const int a = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    if (a != b) es.push_back({a, b, cost()});
  }
  return Graph(n, es);
}

inline std::vector<double> random_weights(std::uint64_t seed, int m, double lo = 0.5, double hi = 4.0) {
  cutcover::CounterRng rng(seed, 0x77);
  std::vector<double> w(static_cast<std::size_t>(m));
  for (auto& x : w) x = rng.uniform(lo, hi);
  return w;
}

inline cutcover::SpanningTree random_tree(const Graph& g, std::uint64_t seed) {
  const std::vector<double> u = random_weights(seed, g.num_edges());
  auto packing = cutcover::pack_trees(g, u, seed);
  return packing.trees.front();
}

inline cutcover::DualState state_with(const std::vector<double>& w, double eps = 0.1, double lambda = 1.0) {
  cutcover::DualState s(w.size(), eps);
  s.w = w;
  s.resum();
  s.lambda = lambda;
  return s;
}

// Focus runs from arbitrary weights: the whole-run weight bounds assume
// w = 1 at the start, so they are not checked here.
inline cutcover::SolverOptions unchecked() {
  cutcover::SolverOptions opts;
  opts.check_invariants = false;
  return opts;
}

// Brute-force views of tree cuts.

// Tree edges on the path u -> lca -> v, in walking order.
inline std::vector<int> tree_path(const cutcover::SpanningTree& t, int u, int v) {
  std::vector<int> up, down;
  while (!t.contains(u, v)) {
    up.push_back(u);
    u = t.parent(u);
  }
  while (v != u) {
    down.push_back(v);
    v = t.parent(v);
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

inline double brute_value(const Graph& g, const cutcover::SpanningTree& t, const cutcover::EdgeWeights& u,
                          cutcover::TreeCut s) {
  return cutcover::cut_weight(g, u, s.single() ? t.side(s.a) : t.side(s.a, s.b));
}

// Per-edge values in the oracle's threshold units.
inline cutcover::EdgeWeights normalized(const cutcover::CutOracle& o) {
  cutcover::EdgeWeights u(static_cast<std::size_t>(o.graph().num_edges()));
  for (int e = 0; e < o.graph().num_edges(); ++e) u[static_cast<std::size_t>(e)] = o.edge_value(e) / o.k();
  return u;
}

// Smallest value over all two-edge cuts within the path.
inline double brute_min_in_path(const cutcover::CutOracle& o, const std::vector<int>& path) {
  const auto u = normalized(o);
  double best = cutcover::kInf;
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size(); ++j)
      best = std::min(best, brute_value(o.graph(), o.tree(), u, cutcover::TreeCut::two(path[i], path[j])));
  return best;
}

// Smallest 1- or 2-respecting cut of the oracle's tree.
inline double brute_tree_min(const cutcover::CutOracle& o) {
  const auto all = cutcover::all_2respecting_cuts_bruteforce(o.graph(), o.tree(), normalized(o), cutcover::kInf);
  double best = cutcover::kInf;
  for (const auto& [cut, value] : all) best = std::min(best, value);
  return best;
}

struct RandomPath {
  Graph g;
  cutcover::SpanningTree t;
  std::vector<int> path;
};

// Random graph, random spanning tree, and a tree path between two random
// vertices with at least two edges when one can be found.
inline RandomPath random_path(std::uint64_t seed, int n_max = 12) {
  Graph g = random_graph(seed, 4, n_max, 30);
  cutcover::SpanningTree t = random_tree(g, seed + 5);
  cutcover::CounterRng rng(seed, 0x31);
  std::vector<int> path;
  for (int attempt = 0; attempt < 50 && path.size() < 2; ++attempt) {
    const int u = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g.num_vertices())));
    const int v = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g.num_vertices())));
    path = tree_path(t, u, v);
  }
  return {std::move(g), std::move(t), std::move(path)};
}

inline double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Named corpus used by the envelope checks: small classics, Petersen
// variants and seeded random graphs.
struct Instance {
  std::string name;
  Graph graph;
};

inline std::vector<Instance> corpus(int random_count = 50) {
  std::vector<Instance> out;
  out.push_back({"K3", triangle()});
  out.push_back({"C4", cycle(4)});
  out.push_back({"C5+chord", c5_chord()});
  out.push_back({"K4", complete(4)});
  out.push_back({"K5", complete(5)});
  for (int r = 0; r <= 3; ++r) out.push_back({"Petersen-" + std::to_string(r), petersen_minus(r)});
  for (int s = 0; s < random_count; ++s)
    out.push_back({"random-" + std::to_string(s), random_graph(1000 + static_cast<std::uint64_t>(s), 4, 12, 30)});
  return out;
}

}  // namespace fixtures

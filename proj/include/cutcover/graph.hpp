#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cutcover/common.hpp"

namespace cutcover {

struct Edge {
  int u = 0;
  int v = 0;
  double cost = 1.0;
};

// Per-edge nonnegative values; meaning is set by the caller (MWU weights,
// effective weights, truncated weights, a fractional solution...).
using EdgeWeights = std::vector<double>;

// A proper nonempty vertex subset, stored as sorted member ids.
struct VertexCut {
  std::vector<int> members;

  std::vector<char> indicator(int n) const {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : members) in[static_cast<std::size_t>(v)] = 1;
    return in;
  }
};

// Immutable undirected multigraph with positive edge costs. Vertices are
// 0-based; parallel edges stay distinct.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) throw ValidationError("graph needs at least 2 vertices");
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw ValidationError("edge " + std::to_string(i) + " has an endpoint out of range");
      if (e.u == e.v) throw ValidationError("edge " + std::to_string(i) + " is a self-loop");
      if (!(e.cost > 0.0) || !std::isfinite(e.cost))
        throw ValidationError("edge " + std::to_string(i) + " has nonpositive cost");
      adjacency_[static_cast<std::size_t>(e.u)].push_back(static_cast<int>(i));
      adjacency_[static_cast<std::size_t>(e.v)].push_back(static_cast<int>(i));
    }
    if (!connected()) throw ValidationError("graph is disconnected");
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  int other(int edge_id, int v) const {
    const Edge& e = edge(edge_id);
    return e.u == v ? e.v : e.u;
  }

  EdgeWeights costs() const {
    EdgeWeights c(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) c[i] = edges_[i].cost;
    return c;
  }

 private:
  bool connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : incident(v)) {
        int x = other(id, v);
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          ++count;
          stack.push_back(x);
        }
      }
    }
    return count == n_;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

inline void validate_weights(const Graph& g, const EdgeWeights& w) {
  if (static_cast<int>(w.size()) != g.num_edges())
    throw ValidationError("weight vector length does not match edge count");
  for (double x : w)
    if (!(x >= 0.0)) throw ValidationError("weights must be nonnegative");
}

// ---------------------------------------------------------------------------
// Loading. Format: optional "c ..." comment lines, a header "p ghct <n> <m>",
// then m lines "e <u> <v> <cost>" with 1-based vertex ids.

inline Graph load_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(line_no) + ": " + why);
    };
    if (tag == "p") {
      std::string kind;
      if (n >= 0) fail("duplicate header");
      if (!(ls >> kind >> n >> m) || kind != "ghct") fail("expected 'p ghct <n> <m>'");
      if (n < 0 || m < 0) fail("negative size in header");
      edges.reserve(static_cast<std::size_t>(m));
    } else if (tag == "e") {
      if (n < 0) fail("edge before header");
      long long u = 0, v = 0;
      double cost = 0.0;
      if (!(ls >> u >> v >> cost)) fail("expected 'e <u> <v> <cost>'");
      if (u < 1 || u > n || v < 1 || v > n) fail("vertex id out of range");
      edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), cost});
    } else {
      fail("unknown line type '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (n < 0) throw ParseError("missing 'p ghct' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph(n, std::move(edges));
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out.precision(17);
  out << "p ghct " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.cost << '\n';
  return out.str();
}

// TSPLIB EUC_2D: complete graph on the coordinates with nint-rounded
// Euclidean costs.
inline Graph load_tsplib_euc2d(std::string_view text, int max_n = 2000) {
  std::istringstream in{std::string(text)};
  std::string line;
  int dimension = -1;
  bool euc2d = false;
  bool in_coords = false;
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (in_coords) {
      std::istringstream ls(t);
      long long id;
      double x, y;
      if (!(ls >> id >> x >> y)) throw ParseError("bad coordinate line: " + t);
      pts.emplace_back(x, y);
      continue;
    }
    auto colon = t.find(':');
    std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
    std::string val = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
    if (key == "DIMENSION") {
      dimension = std::stoi(val);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      euc2d = (val == "EUC_2D");
    } else if (key == "NODE_COORD_SECTION") {
      in_coords = true;
    }
  }
  if (!euc2d) throw ParseError("only EDGE_WEIGHT_TYPE: EUC_2D is supported");
  if (dimension < 2 || static_cast<int>(pts.size()) != dimension)
    throw ParseError("DIMENSION does not match coordinate count");
  if (dimension > max_n) throw SizeError("TSPLIB instance too large for the complete graph");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension - 1) / 2);
  for (int a = 0; a < dimension; ++a)
    for (int b = a + 1; b < dimension; ++b) {
      double dx = pts[static_cast<std::size_t>(a)].first - pts[static_cast<std::size_t>(b)].first;
      double dy = pts[static_cast<std::size_t>(a)].second - pts[static_cast<std::size_t>(b)].second;
      double c = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
      if (c <= 0.0) throw ValidationError("coincident TSPLIB cities give a zero-cost edge");
      edges.push_back({a, b, c});
    }
  return Graph(dimension, std::move(edges));
}

// ---------------------------------------------------------------------------
// Cut evaluation.

// w(delta(S)) by a direct edge scan.
inline double cut_weight(const Graph& g, const EdgeWeights& w, const std::vector<char>& in_s) {
  double total = 0.0;
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (in_s[static_cast<std::size_t>(e.u)] != in_s[static_cast<std::size_t>(e.v)])
      total += w[static_cast<std::size_t>(i)];
  }
  return total;
}

inline double cut_weight(const Graph& g, const EdgeWeights& w, const VertexCut& s) {
  if (s.members.empty() || static_cast<int>(s.members.size()) >= g.num_vertices())
    throw ValidationError("cut must be a proper nonempty subset");
  return cut_weight(g, w, s.indicator(g.num_vertices()));
}

inline std::vector<int> cut_edges(const Graph& g, const std::vector<char>& in_s) {
  std::vector<int> out;
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (in_s[static_cast<std::size_t>(e.u)] != in_s[static_cast<std::size_t>(e.v)]) out.push_back(i);
  }
  return out;
}

struct MinCut {
  VertexCut side;
  double value = kInf;
};

inline constexpr int kBruteForceMaxVertices = 20;

// Visits every proper subset containing vertex 0 in Gray-code order, calling
// visit(indicator, value). Cost is O(2^(n-1) * average degree).
template <class Visit>
void for_each_cut(const Graph& g, const EdgeWeights& w, Visit&& visit) {
  const int n = g.num_vertices();
  if (n > kBruteForceMaxVertices)
    throw SizeError("brute-force cut enumeration needs n <= " + std::to_string(kBruteForceMaxVertices));
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  in[0] = 1;
  double value = 0.0;
  auto flip = [&](int v) {
    in[static_cast<std::size_t>(v)] ^= 1;
    for (int id : g.incident(v)) {
      int x = g.other(id, v);
      // After the flip, an edge crosses iff the endpoints differ.
      if (in[static_cast<std::size_t>(x)] != in[static_cast<std::size_t>(v)])
        value += w[static_cast<std::size_t>(id)];
      else
        value -= w[static_cast<std::size_t>(id)];
    }
  };
  value = cut_weight(g, w, in);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (code > 0) {
      // Gray code step: flip vertex 1 + (index of lowest set bit).
      int bit = std::countr_zero(code);
      flip(bit + 1);
    }
    const std::uint64_t gray = code ^ (code >> 1);
    if (gray == total - 1) continue;  // S = V
    visit(in, value);
  }
}

inline MinCut exact_min_cut_bruteforce(const Graph& g, const EdgeWeights& w) {
  validate_weights(g, w);
  MinCut best;
  std::vector<char> best_in;
  for_each_cut(g, w, [&](const std::vector<char>& in, double) {
    // Recompute exactly to avoid Gray-code drift in the reported value.
    double v = cut_weight(g, w, in);
    if (v < best.value) {
      best.value = v;
      best_in = in;
    }
  });
  for (int v = 0; v < g.num_vertices(); ++v)
    if (best_in[static_cast<std::size_t>(v)]) best.side.members.push_back(v);
  return best;
}

// Submodularity and posimodularity of f_w on the pair (X, Y), with
// f(empty) = f(V) = 0.
inline bool check_sub_posi_modularity(const Graph& g, const EdgeWeights& w, const VertexCut& x,
                                      const VertexCut& y) {
  const int n = g.num_vertices();
  auto fx = x.indicator(n), fy = y.indicator(n);
  std::vector<char> both(static_cast<std::size_t>(n)), either(static_cast<std::size_t>(n)),
      x_only(static_cast<std::size_t>(n)), y_only(static_cast<std::size_t>(n));
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
    both[v] = fx[v] && fy[v];
    either[v] = fx[v] || fy[v];
    x_only[v] = fx[v] && !fy[v];
    y_only[v] = fy[v] && !fx[v];
  }
  auto f = [&](const std::vector<char>& s) { return cut_weight(g, w, s); };
  const double lhs = f(fx) + f(fy);
  const double tol = 1e-9 * (1.0 + std::abs(lhs));
  return lhs + tol >= f(both) + f(either) && lhs + tol >= f(x_only) + f(y_only);
}

// Stoer-Wagner global minimum cut, O(n m log m). Deterministic.
inline MinCut stoer_wagner(const Graph& g, const EdgeWeights& w) {
  validate_weights(g, w);
  const int n = g.num_vertices();
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    double x = w[static_cast<std::size_t>(i)];
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, x);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, x);
  }
  std::vector<int> rep(static_cast<std::size_t>(n));
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](int v) {
    while (rep[static_cast<std::size_t>(v)] != v) {
      rep[static_cast<std::size_t>(v)] = rep[static_cast<std::size_t>(rep[static_cast<std::size_t>(v)])];
      v = rep[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<std::vector<int>> group(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) group[static_cast<std::size_t>(v)] = {v};
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);

  MinCut best;
  std::vector<double> key(static_cast<std::size_t>(n));
  std::vector<char> added(static_cast<std::size_t>(n));
  while (active.size() > 1) {
    for (int v : active) {
      key[static_cast<std::size_t>(v)] = 0.0;
      added[static_cast<std::size_t>(v)] = 0;
    }
    using Item = std::pair<double, int>;
    auto cmp = [](const Item& a, const Item& b) {
      return a.first < b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    heap.emplace(0.0, active.front());
    int prev = -1, last = -1;
    std::size_t count = 0;
    while (count < active.size()) {
      int v;
      if (heap.empty()) {
        // Disconnected remainder (zero-weight separation); pick any unvisited.
        v = -1;
        for (int a : active)
          if (!added[static_cast<std::size_t>(a)]) {
            v = a;
            break;
          }
      } else {
        auto [k, top] = heap.top();
        heap.pop();
        if (added[static_cast<std::size_t>(top)] || k != key[static_cast<std::size_t>(top)]) continue;
        v = top;
      }
      added[static_cast<std::size_t>(v)] = 1;
      ++count;
      prev = last;
      last = v;
      for (auto [x, wt] : adj[static_cast<std::size_t>(v)]) {
        int r = find(x);
        if (r == v || added[static_cast<std::size_t>(r)]) continue;
        key[static_cast<std::size_t>(r)] += wt;
        heap.emplace(key[static_cast<std::size_t>(r)], r);
      }
    }
    const double phase_cut = key[static_cast<std::size_t>(last)];
    if (phase_cut < best.value) {
      best.value = phase_cut;
      best.side.members = group[static_cast<std::size_t>(last)];
    }
    // Merge last into prev.
    auto& into = adj[static_cast<std::size_t>(prev)];
    auto& from = adj[static_cast<std::size_t>(last)];
    into.insert(into.end(), from.begin(), from.end());
    from.clear();
    from.shrink_to_fit();
    rep[static_cast<std::size_t>(last)] = prev;
    auto& gp = group[static_cast<std::size_t>(prev)];
    auto& gl = group[static_cast<std::size_t>(last)];
    gp.insert(gp.end(), gl.begin(), gl.end());
    gl.clear();
    active.erase(std::find(active.begin(), active.end(), last));
  }
  std::sort(best.side.members.begin(), best.side.members.end());
  return best;
}

// Exact global min cut value: enumeration on tiny graphs, Stoer-Wagner
// otherwise.
inline MinCut exact_min_cut(const Graph& g, const EdgeWeights& w) {
  if (g.num_vertices() <= 4) return exact_min_cut_bruteforce(g, w);
  return stoer_wagner(g, w);
}

}  // namespace cutcover

#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "cutcover/common.hpp"
#include "cutcover/graph.hpp"

namespace cutcover {

// Rooted spanning tree with an Euler (preorder) index. A tree edge is named
// by its lower endpoint: tree edge v joins v to parent(v). The subtree of v
// occupies positions [tin(v), tout(v)). Children are ordered heaviest first,
// so every heavy chain is a contiguous run of positions.
class SpanningTree {
 public:
  SpanningTree() = default;

  SpanningTree(const Graph& g, std::span<const int> edge_ids, int root = 0) : n_(g.num_vertices()), root_(root) {
    const auto n = static_cast<std::size_t>(n_);
    if (edge_ids.size() + 1 != n) throw ValidationError("spanning tree needs n-1 edges");
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int id : edge_ids) {
      const Edge& e = g.edge(id);
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
      adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
    }
    parent_.assign(n, -1);
    parent_edge_.assign(n, -1);
    depth_.assign(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    order.push_back(root_);
    seen[static_cast<std::size_t>(root_)] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (auto [x, id] : adj[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        seen[static_cast<std::size_t>(x)] = 1;
        parent_[static_cast<std::size_t>(x)] = v;
        parent_edge_[static_cast<std::size_t>(x)] = id;
        depth_[static_cast<std::size_t>(x)] = depth_[static_cast<std::size_t>(v)] + 1;
        order.push_back(x);
      }
    }
    if (order.size() != n) throw ValidationError("tree edges do not span the graph");

    size_.assign(n, 1);
    for (std::size_t i = n; i-- > 1;) size_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(order[i])])] +=
        size_[static_cast<std::size_t>(order[i])];
    children_.assign(n, {});
    for (std::size_t i = 1; i < n; ++i) children_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(order[i])])].push_back(order[i]);
    for (auto& ch : children_)
      std::stable_sort(ch.begin(), ch.end(), [&](int a, int b) {
        return size_[static_cast<std::size_t>(a)] > size_[static_cast<std::size_t>(b)];
      });

    tin_.assign(n, 0);
    tout_.assign(n, 0);
    vertex_at_.assign(n, 0);
    int clock = 0;
    std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
    tin_[static_cast<std::size_t>(root_)] = clock;
    vertex_at_[static_cast<std::size_t>(clock++)] = root_;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& ch = children_[static_cast<std::size_t>(v)];
      if (next < ch.size()) {
        int c = ch[next++];
        tin_[static_cast<std::size_t>(c)] = clock;
        vertex_at_[static_cast<std::size_t>(clock++)] = c;
        stack.emplace_back(c, 0);
      } else {
        tout_[static_cast<std::size_t>(v)] = clock;
        stack.pop_back();
      }
    }
  }

  int num_vertices() const { return n_; }
  int root() const { return root_; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  int parent_edge(int v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  int subtree_size(int v) const { return size_[static_cast<std::size_t>(v)]; }
  int tin(int v) const { return tin_[static_cast<std::size_t>(v)]; }
  int tout(int v) const { return tout_[static_cast<std::size_t>(v)]; }
  int vertex_at(int pos) const { return vertex_at_[static_cast<std::size_t>(pos)]; }
  const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  int heavy_child(int v) const {
    const auto& ch = children(v);
    return ch.empty() ? -1 : ch.front();
  }

  // a is an ancestor of b (or equal).
  bool contains(int a, int b) const { return tin(a) <= tin(b) && tin(b) < tout(a); }
  bool related(int a, int b) const { return contains(a, b) || contains(b, a); }

  // All tree edges, by lower endpoint, in Euler order.
  std::vector<int> tree_edges() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n_ - 1));
    for (int p = 1; p < n_; ++p) out.push_back(vertex_at(p));
    return out;
  }

  std::vector<int> graph_edge_ids() const {
    std::vector<int> out;
    for (int v : tree_edges()) out.push_back(parent_edge(v));
    return out;
  }

  // Cut side of a one- or two-edge tree cut as 0/1 vertex indicator: the
  // vertices separated from the root by an odd number of the given edges.
  std::vector<char> side(int a, int b = -1) const {
    std::vector<char> in(static_cast<std::size_t>(n_), 0);
    for (int p = tin(a); p < tout(a); ++p) in[static_cast<std::size_t>(vertex_at(p))] ^= 1;
    if (b >= 0)
      for (int p = tin(b); p < tout(b); ++p) in[static_cast<std::size_t>(vertex_at(p))] ^= 1;
    return in;
  }

 private:
  int n_ = 0;
  int root_ = 0;
  std::vector<int> parent_, parent_edge_, depth_, size_, tin_, tout_, vertex_at_;
  std::vector<std::vector<int>> children_;
};

}  // namespace cutcover

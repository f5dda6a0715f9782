#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cutcover;

namespace {

bool is_spanning_tree(const Graph& g, const SpanningTree& t) {
  if (t.num_vertices() != g.num_vertices()) return false;
  const auto ids = t.graph_edge_ids();
  if (static_cast<int>(ids.size()) != g.num_vertices() - 1) return false;
  for (int v : t.tree_edges()) {
    const Edge& e = g.edge(t.parent_edge(v));
    if (!((e.u == v && e.v == t.parent(v)) || (e.v == v && e.u == t.parent(v)))) return false;
  }
  return true;
}

double min_one_edge(const CutOracle& o) {
  double best = kInf;
  for (int v : o.tree().tree_edges()) best = std::min(best, o.cut_value(TreeCut::one(v)));
  return best;
}

}  // namespace

TEST(PackTrees, TriangleTreesRespectAllCuts) {
  const Graph g = fixtures::triangle();
  const auto packing = pack_trees(g, EdgeWeights(3, 1.0), 1);
  ASSERT_FALSE(packing.trees.empty());
  for (const auto& t : packing.trees) EXPECT_TRUE(is_spanning_tree(g, t));
  EXPECT_TRUE(verify_packing(g, EdgeWeights(3, 1.0), packing, 0.0));
}

TEST(PackTrees, CycleVerifiedAcrossSeeds) {
  const Graph g = fixtures::cycle(4);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    ok += verify_packing(g, EdgeWeights(4, 1.0), pack_trees(g, EdgeWeights(4, 1.0), seed), 0.1) ? 1 : 0;
  EXPECT_GE(ok, 99);
}

TEST(PackTrees, SingleEdgeRepeatsTheOnlyTree) {
  const Graph g = fixtures::single_edge();
  const auto packing = pack_trees(g, EdgeWeights(1, 1.0), 3);
  ASSERT_FALSE(packing.trees.empty());
  for (const auto& t : packing.trees) EXPECT_EQ(t.graph_edge_ids(), std::vector<int>{0});
}

TEST(PackTrees, SizeIsLogarithmic) {
  const Graph g = fixtures::complete(12);
  const auto packing = pack_trees(g, EdgeWeights(66, 1.0), 5);
  EXPECT_EQ(packing.trees.size(), static_cast<std::size_t>(std::ceil(3.0 * std::log(12.0))));
  for (const auto& t : packing.trees) EXPECT_TRUE(is_spanning_tree(g, t));
}

TEST(PackTrees, DeterministicForSeed) {
  const Graph g = fixtures::random_graph(3, 8, 12, 30);
  const auto u = fixtures::random_weights(3, g.num_edges());
  const auto a = pack_trees(g, u, 42), b = pack_trees(g, u, 42);
  ASSERT_EQ(a.trees.size(), b.trees.size());
  for (std::size_t i = 0; i < a.trees.size(); ++i) EXPECT_EQ(a.trees[i].graph_edge_ids(), b.trees[i].graph_edge_ids());
}

TEST(PackTrees, RandomGraphsVerified) {
  int ok = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = fixtures::random_graph(seed, 4, 10, 24);
    const auto u = fixtures::random_weights(seed, g.num_edges());
    ++total;
    ok += verify_packing(g, u, pack_trees(g, u, seed), 0.1) ? 1 : 0;
  }
  EXPECT_GE(ok, total - 1);
}

TEST(Min1or2, ChordedFiveCycle) {
  const Graph g = fixtures::c5_chord();
  const SpanningTree t = fixtures::c5_path_tree(g);
  DualState s = fixtures::state_with(fixtures::kC5Weights);
  const std::vector<double> unit(5, 1.0);
  CutOracle o(g, t, unit, 1, s);
  const auto [cut, value] = min_1or2_respecting_cut(o);
  EXPECT_DOUBLE_EQ(value, 2.0);
  const bool allowed = cut == TreeCut::two(2, 3) || cut == TreeCut::one(2) || cut == TreeCut::one(3);
  EXPECT_TRUE(allowed);
}

TEST(Min1or2, StarInsideK4) {
  const Graph g = fixtures::complete(4);
  const std::vector<int> star{0, 1, 2};
  const SpanningTree t(g, star, 0);
  DualState s(6, 0.1);
  const std::vector<double> unit(6, 1.0);
  CutOracle o(g, t, unit, 1, s);
  EXPECT_DOUBLE_EQ(min_one_edge(o), 3.0);
  EXPECT_DOUBLE_EQ(min_1or2_respecting_cut(o).second, 3.0);
}

TEST(Min1or2, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Graph g = fixtures::random_graph(seed, 3, 12, 30);
    const SpanningTree t = fixtures::random_tree(g, seed + 11);
    const auto w = fixtures::random_weights(seed, g.num_edges());
    DualState s = fixtures::state_with(w);
    const std::vector<double> unit(w.size(), 1.0);
    CutOracle o(g, t, unit, 1, s);
    const auto all = all_2respecting_cuts_bruteforce(g, t, w, kInf);
    double best = kInf;
    for (const auto& [cut, value] : all) best = std::min(best, value);
    const auto [cut, value] = min_1or2_respecting_cut(o);
    EXPECT_NEAR(value, best, 1e-9 * best) << "seed " << seed;
    const auto side = cut.single() ? t.side(cut.a) : t.side(cut.a, cut.b);
    EXPECT_NEAR(cut_weight(g, w, side), value, 1e-9 * best);
    const MinCut exact = exact_min_cut_bruteforce(g, w);
    EXPECT_GE(value, exact.value * (1 - 1e-12));
    if (tree_edges_crossing(t, exact.side.indicator(g.num_vertices())) <= 2) {
      EXPECT_NEAR(value, exact.value, 1e-9 * exact.value);
    }
  }
}

TEST(InitialLambda, Triangle) {
  const Graph g = fixtures::triangle();
  SolverOptions opts;
  CutCoverDriver d(g, g.costs(), 1, CutOracle::Mode::plain, 7, opts);
  DualState s(3, 0.1);
  EXPECT_NEAR(d.initial_lambda(s), 2.0 / 1.1, 1e-12);
}

TEST(InitialLambda, FourCycle) {
  const Graph g = fixtures::cycle(4);
  SolverOptions opts;
  CutCoverDriver d(g, g.costs(), 1, CutOracle::Mode::plain, 7, opts);
  DualState s(4, 0.1);
  EXPECT_NEAR(d.initial_lambda(s), 2.0 / 1.1, 1e-12);
}

TEST(InitialLambda, SingleEdgeNormalized) {
  // Effective weight w/(k c) = 1/10 on the only cut.
  const Graph g = fixtures::single_edge();
  SolverOptions opts;
  CutCoverDriver d(g, g.costs(), 2, CutOracle::Mode::plain, 7, opts);
  DualState s(1, 0.1);
  EXPECT_NEAR(d.initial_lambda(s), 0.1 / 1.1, 1e-12);
}

TEST(InitialLambda, AtMostMinimumColumn) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = fixtures::random_graph(seed, 3, 12, 30);
    SolverOptions opts;
    EpochOptions large;
    large.exact_max_vertices = 0;
    CutCoverDriver d(g, g.costs(), 2, CutOracle::Mode::plain, seed, opts, large);
    DualState s(static_cast<std::size_t>(g.num_edges()), 0.1);
    const double lambda = d.initial_lambda(s);
    const double exact = exact_min_cut_bruteforce(g, d.effective(s)).value;
    EXPECT_LE(lambda, exact * (1 + 1e-12));
    EXPECT_GE(lambda * 1.1, exact * (1 - 1e-12)) << "seed " << seed;
  }
}

TEST(PackedMinCut, MatchesExact) {
  int hits = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = fixtures::random_graph(seed, 3, 14, 40);
    const auto u = fixtures::random_weights(seed + 99, g.num_edges());
    const double exact = stoer_wagner(g, u).value;
    const double packed = packed_min_cut(g, u, seed);
    EXPECT_GE(packed, exact * (1 - 1e-12));
    ++total;
    hits += packed <= exact * (1 + 1e-9) ? 1 : 0;
  }
  EXPECT_GE(hits, total - 1);
}

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "graph_oracles.hpp"
#include "nsdp/ordering.hpp"

using namespace nsdp;
using namespace nsdp::testing;

namespace {

InteractionGraph random_graph(std::mt19937& rng, int n, double density) {
  InteractionGraph g(n);
  std::bernoulli_distribution edge(density);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

EliminationSequence worked_order(const InteractionGraph& g) {
  return EliminationSequence::from_order(g, xs({5, 2, 1, 4, 3, 6, 7}));
}

}  // namespace

TEST_CASE("EliminationSequence validation") {
  const auto g = build_interaction_graph(primer());
  CHECK_NOTHROW(worked_order(g));
  CHECK_THROWS_AS(EliminationSequence::from_order(g, xs({5, 2, 1, 4, 3, 6})), InputError);
  CHECK_THROWS_AS(EliminationSequence::from_order(g, xs({5, 2, 1, 4, 3, 6, 6})), InputError);
  CHECK_THROWS_AS(EliminationSequence::from_order(g, xs({5, 2, 1, 4, 3, 6, 8})), InputError);
  CHECK_THROWS_AS(EliminationSequence::from_blocks(g, {xs({1, 2, 3, 4, 5, 6, 7}), {}}), InputError);

  const auto seq = EliminationSequence::from_blocks(g, blocks({{7, 6}, {3}, {4, 1}, {2}, {5}}));
  CHECK(seq[0] == xs({6, 7}));
  CHECK(seq[2] == xs({1, 4}));
  CHECK(seq.step_of(3) == 3);
  CHECK(seq.step_of(4) == 5);
  CHECK(seq.flatten() == xs({6, 7, 3, 1, 4, 2, 5}));
}

TEST_CASE("elimination game on the primer graph") {
  const auto g = build_interaction_graph(primer());

  SUBCASE("order x5,x2,x1,x4,x3,x6,x7") {
    const auto rec = elimination_game(g, worked_order(g));
    const std::vector<Edge> fill = {{0, 3}};
    CHECK(rec.fill == fill);
    CHECK(rec.filled.num_edges() == 10);
    CHECK(rec.induced_width == 3);
    REQUIRE(rec.steps.size() == 7);
    const std::vector<std::vector<VarId>> scopes = {xs({2}),    xs({1, 3, 4}), xs({3, 4}), xs({3}),
                                                    xs({6, 7}), xs({7}),       {}};
    for (std::size_t i = 0; i < 7; ++i) CHECK(rec.steps[i].scope == scopes[i]);
    CHECK(is_chordal(rec.filled));
  }

  SUBCASE("block sequence (x6,x7),(x3),(x1,x4),(x2),(x5)") {
    const auto seq = EliminationSequence::from_blocks(g, blocks({{6, 7}, {3}, {1, 4}, {2}, {5}}));
    const auto rec = elimination_game(g, seq);
    const std::vector<std::vector<VarId>> scopes = {xs({3}), xs({1, 2, 4}), xs({2}), xs({5}), {}};
    REQUIRE(rec.steps.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(rec.steps[i].scope == scopes[i]);
    const std::vector<Edge> fill = {{0, 3}};  // x3 leaves x1,x2,x4 behind
    CHECK(rec.fill == fill);
  }

  SUBCASE("one block holding everything") {
    const auto seq = EliminationSequence::from_blocks(g, {xs({1, 2, 3, 4, 5, 6, 7})});
    const auto rec = elimination_game(g, seq);
    CHECK(rec.steps.front().scope.empty());
    CHECK(rec.induced_width == 0);
  }
}

TEST_CASE("induced width is the largest scope") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(rng, 9, 0.3);
    const auto seq = EliminationSequence::from_order(g, random_order(rng, 9));
    const auto rec = elimination_game(g, seq);
    std::size_t widest = 0;
    for (const auto& s : rec.steps) widest = std::max(widest, s.scope.size());
    CHECK(rec.induced_width == static_cast<int>(widest));
    CHECK(induced_width(g, seq) == rec.induced_width);
  }
}

TEST_CASE("filled graph matches the path characterization") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 6;
    const auto g = random_graph(rng, n, 0.35);
    const auto seq = trial % 2 ? EliminationSequence::from_order(g, random_order(rng, n))
                               : EliminationSequence::from_blocks(g, random_blocks(rng, n));
    const auto rec = elimination_game(g, seq);
    const auto expected = filled_edges_by_paths(g, seq);
    const auto got = rec.filled.edges();
    CHECK(std::set<Edge>(got.begin(), got.end()) == expected);
    for (const auto& e : rec.fill) CHECK_FALSE(g.adjacent(e.first, e.second));
  }
}

TEST_CASE("single-vertex elimination always yields a chordal filled graph") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(rng, 8, 0.3);
    const auto rec = elimination_game(g, EliminationSequence::from_order(g, random_order(rng, 8)));
    CHECK(is_chordal(rec.filled));
    CHECK(chordal_by_induced_cycles(rec.filled));
  }
}

TEST_CASE("elimination tree") {
  const auto g = build_interaction_graph(primer());
  SUBCASE("worked order gives a chain") {
    const auto tree = elimination_tree(elimination_game(g, worked_order(g)));
    const std::vector<int> expected = {1, 2, 3, 4, 5, 6, EliminationTree::kRoot};
    CHECK(tree.parent == expected);
  }
  SUBCASE("block sequence") {
    const auto seq = EliminationSequence::from_blocks(g, blocks({{6, 7}, {3}, {1, 4}, {2}, {5}}));
    const auto tree = elimination_tree(elimination_game(g, seq));
    const std::vector<int> expected = {1, 2, 3, 4, EliminationTree::kRoot};
    CHECK(tree.parent == expected);
    CHECK(tree.children()[1] == std::vector<int>{0});
  }
  SUBCASE("disconnected graph gives a forest") {
    InteractionGraph h(4);
    h.add_edge(0, 1);
    h.add_edge(2, 3);
    const auto tree = elimination_tree(elimination_game(h, EliminationSequence::from_order(h, xs({1, 3, 2, 4}))));
    const std::vector<int> expected = {2, 3, EliminationTree::kRoot, EliminationTree::kRoot};
    CHECK(tree.parent == expected);
  }
}

TEST_CASE("each scope lies inside its parent's block and scope") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + trial % 6;
    const auto g = random_graph(rng, n, 0.3);
    const auto seq = EliminationSequence::from_blocks(g, random_blocks(rng, n));
    const auto rec = elimination_game(g, seq);
    const auto tree = elimination_tree(rec);
    for (std::size_t i = 0; i < rec.steps.size(); ++i) {
      const int parent = tree.parent[i];
      if (parent == EliminationTree::kRoot) {
        CHECK(rec.steps[i].scope.empty());
        continue;
      }
      CHECK(parent > static_cast<int>(i));
      std::set<VarId> up(rec.steps[parent].block.begin(), rec.steps[parent].block.end());
      up.insert(rec.steps[parent].scope.begin(), rec.steps[parent].scope.end());
      for (VarId v : rec.steps[i].scope) CHECK(up.contains(v));
    }
  }
}

TEST_CASE("ordering heuristics") {
  const auto g = build_interaction_graph(primer());

  SUBCASE("min-degree on the primer graph") {
    const auto seq = order_min_degree(g);
    CHECK(seq.flatten() == xs({5, 1, 2, 4, 3, 6, 7}));
    CHECK(induced_width(g, seq) == 2);
  }
  SUBCASE("min-fill and mcs add no fill on a chordal graph") {
    CHECK(elimination_game(g, order_min_fill(g)).fill.empty());
    CHECK(elimination_game(g, order_mcs(g)).fill.empty());
    CHECK(induced_width(g, order_min_fill(g)) == 2);
  }
  SUBCASE("four-cycle needs exactly one fill edge") {
    InteractionGraph c4(4);
    for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
    const auto rec = elimination_game(c4, order_min_fill(c4));
    CHECK(rec.fill.size() == 1);
    CHECK(rec.induced_width == 2);
  }
  SUBCASE("empty graph") {
    const InteractionGraph empty(3);
    CHECK(order_min_fill(empty).flatten() == std::vector<VarId>{0, 1, 2});
    CHECK(induced_width(empty, order_min_degree(empty)) == 0);
  }
}

TEST_CASE("heuristics are zero-fill on random chordal graphs") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto base = random_graph(rng, 9, 0.25);
    const auto chordal = elimination_game(base, EliminationSequence::from_order(base, random_order(rng, 9))).filled;
    CHECK(elimination_game(chordal, order_mcs(chordal)).fill.empty());
    CHECK(elimination_game(chordal, order_min_fill(chordal)).fill.empty());
  }
}

TEST_CASE("order_blocks_min_fill keeps the given blocks") {
  const auto g = build_interaction_graph(primer());
  const Partition p{blocks({{5}, {1, 2, 4}, {6, 7}, {3}})};
  const auto seq = order_blocks_min_fill(g, p);
  REQUIRE(seq.size() == 4);
  std::vector<std::vector<VarId>> got = seq.blocks();
  std::sort(got.begin(), got.end());
  auto expected = p.blocks;
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
  CHECK(elimination_game(g, seq).fill.empty());
}

TEST_CASE("block elimination can leave a chordless cycle") {
  // Path u-a-b-v with block {a,b}: the scope {u,v} is joined, but a and b
  // never gain edges to v and u, so u-a-b-v-u stays chordless.
  InteractionGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  const auto rec = elimination_game(g, EliminationSequence::from_blocks(g, {{1, 2}, {0}, {3}}));
  CHECK(rec.fill == std::vector<Edge>{{0, 3}});
  CHECK_FALSE(is_chordal(rec.filled));
  CHECK(is_chordal(quotient_graph(rec.filled, Partition{{{0}, {1, 2}, {3}}})));
}

TEST_CASE("min-degree is not always zero-fill on chordal graphs") {
  InteractionGraph g(9);
  g.add_clique(std::vector<VarId>{0, 1, 2, 3});
  g.add_clique(std::vector<VarId>{5, 6, 7, 8});
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  REQUIRE(is_chordal(g));
  CHECK(order_min_degree(g)[0] == std::vector<VarId>{4});
  CHECK(elimination_game(g, order_min_degree(g)).fill.size() == 1);
  CHECK(elimination_game(g, order_min_fill(g)).fill.empty());
  CHECK(elimination_game(g, order_mcs(g)).fill.empty());
}

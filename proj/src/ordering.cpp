#include "nsdp/ordering.hpp"

#include <algorithm>

namespace nsdp {

EliminationSequence EliminationSequence::from_blocks(const InteractionGraph& g,
                                                     std::vector<std::vector<VarId>> blocks) {
  Partition p{std::move(blocks)};
  if (auto bad = p.violations(g); !bad.empty()) throw InputError("invalid elimination sequence: " + bad.front());
  EliminationSequence seq;
  seq.step_of_.assign(g.capacity(), 0);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    std::sort(p.blocks[i].begin(), p.blocks[i].end());
    for (VarId v : p.blocks[i]) seq.step_of_[v] = static_cast<int>(i) + 1;
  }
  seq.blocks_ = std::move(p.blocks);
  return seq;
}

EliminationSequence EliminationSequence::from_order(const InteractionGraph& g, std::span<const VarId> order) {
  std::vector<std::vector<VarId>> blocks;
  blocks.reserve(order.size());
  for (VarId v : order) blocks.push_back({v});
  return from_blocks(g, std::move(blocks));
}

std::vector<VarId> EliminationSequence::flatten() const {
  std::vector<VarId> out;
  for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
  return out;
}

EliminationRecord elimination_game(const InteractionGraph& g, const EliminationSequence& seq) {
  if (auto bad = Partition{seq.blocks()}.violations(g); !bad.empty())
    throw InputError("invalid elimination sequence: " + bad.front());

  EliminationRecord rec;
  rec.sequence = seq;
  rec.filled = g;
  InteractionGraph current = g;
  for (const auto& block : seq.blocks()) {
    const VertexSet nb = neighborhood(current, VertexSet(block.begin(), block.end()));
    rec.steps.push_back({block, std::vector<VarId>(nb.begin(), nb.end())});
    rec.induced_width = std::max(rec.induced_width, static_cast<int>(nb.size()));
    auto next = eliminate_vertices(current, block);
    for (const auto& [u, v] : next.fill) {
      rec.filled.add_edge(u, v);
      rec.fill.emplace_back(u, v);
    }
    current = std::move(next.graph);
  }
  std::sort(rec.fill.begin(), rec.fill.end());
  return rec;
}

int induced_width(const InteractionGraph& g, const EliminationSequence& seq) {
  return elimination_game(g, seq).induced_width;
}

std::vector<std::vector<int>> EliminationTree::children() const {
  std::vector<std::vector<int>> out(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (parent[i] != kRoot) out[parent[i]].push_back(static_cast<int>(i));
  return out;
}

EliminationTree elimination_tree(const EliminationRecord& rec) {
  EliminationTree tree;
  tree.parent.reserve(rec.steps.size());
  for (const auto& step : rec.steps) {
    int parent = EliminationTree::kRoot;
    for (VarId v : step.scope) {
      const int s = rec.sequence.step_of(v) - 1;
      if (parent == EliminationTree::kRoot || s < parent) parent = s;
    }
    tree.parent.push_back(parent);
  }
  return tree;
}

namespace {

std::size_t fill_count(const InteractionGraph& g, VarId v) {
  const auto& nb = g.neighbors(v);
  std::size_t missing = 0;
  for (auto i = nb.begin(); i != nb.end(); ++i)
    for (auto j = std::next(i); j != nb.end(); ++j)
      if (!g.adjacent(*i, *j)) ++missing;
  return missing;
}

// Greedy elimination: repeatedly takes the vertex with the smallest score,
// lowest id on ties, and simulates its elimination.
template <typename Score>
std::vector<VarId> greedy_order(const InteractionGraph& g, Score score) {
  InteractionGraph current = g;
  std::vector<VarId> order;
  order.reserve(g.num_vertices());
  while (current.num_vertices() > 0) {
    VarId best = -1;
    std::size_t best_score = 0;
    for (VarId v : current.vertices()) {
      const std::size_t s = score(current, v);
      if (best < 0 || s < best_score) {
        best = v;
        best_score = s;
      }
    }
    order.push_back(best);
    current = eliminate_vertex(current, best).graph;
  }
  return order;
}

}  // namespace

EliminationSequence order_min_degree(const InteractionGraph& g) {
  const auto order = greedy_order(g, [](const InteractionGraph& h, VarId v) { return h.neighbors(v).size(); });
  return EliminationSequence::from_order(g, order);
}

EliminationSequence order_min_fill(const InteractionGraph& g) {
  return EliminationSequence::from_order(g, greedy_order(g, fill_count));
}

EliminationSequence order_mcs(const InteractionGraph& g) {
  auto order = mcs_visit_order(g);
  std::reverse(order.begin(), order.end());
  return EliminationSequence::from_order(g, order);
}

EliminationSequence order_blocks_min_fill(const InteractionGraph& g, const Partition& p) {
  const auto q = quotient_graph(g, p);
  std::vector<std::vector<VarId>> blocks;
  for (VarId b : greedy_order(q, fill_count)) blocks.push_back(p.blocks[b]);
  return EliminationSequence::from_blocks(g, std::move(blocks));
}

}  // namespace nsdp

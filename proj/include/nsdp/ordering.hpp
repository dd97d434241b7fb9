#pragma once

#include <vector>

#include "nsdp/graph.hpp"

namespace nsdp {

/// Blocks listed in the order they are eliminated. Singleton blocks give
/// plain variable elimination. Members of each block are kept ascending.
class EliminationSequence {
 public:
  EliminationSequence() = default;

  /// Throws InputError unless `blocks` partition the vertices of `g`.
  static EliminationSequence from_blocks(const InteractionGraph& g, std::vector<std::vector<VarId>> blocks);
  static EliminationSequence from_order(const InteractionGraph& g, std::span<const VarId> order);

  const std::vector<std::vector<VarId>>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<VarId>& operator[](std::size_t step) const { return blocks_[step]; }
  /// 1-based elimination step of `v`.
  int step_of(VarId v) const { return step_of_.at(v); }
  /// Vertices flattened in elimination order.
  std::vector<VarId> flatten() const;

  bool operator==(const EliminationSequence&) const = default;

 private:
  std::vector<std::vector<VarId>> blocks_;
  std::vector<int> step_of_;
};

struct EliminationStep {
  std::vector<VarId> block;
  /// Open neighborhood of the block in the graph current at its step.
  std::vector<VarId> scope;
};

struct EliminationRecord {
  EliminationSequence sequence;
  std::vector<EliminationStep> steps;
  std::vector<Edge> fill;
  InteractionGraph filled;
  int induced_width = 0;
};

/// Eliminates the blocks of `seq` in order, completing each block's
/// neighborhood into a clique before deleting the block.
EliminationRecord elimination_game(const InteractionGraph& g, const EliminationSequence& seq);

int induced_width(const InteractionGraph& g, const EliminationSequence& seq);

/// Parent of each step: the earliest-eliminated block meeting its scope.
/// Steps with an empty scope hang off the virtual root.
struct EliminationTree {
  static constexpr int kRoot = -1;
  std::vector<int> parent;

  std::vector<std::vector<int>> children() const;
};

EliminationTree elimination_tree(const EliminationRecord& rec);

EliminationSequence order_min_degree(const InteractionGraph& g);
EliminationSequence order_min_fill(const InteractionGraph& g);
/// Reverse of the maximum-cardinality search visit order.
EliminationSequence order_mcs(const InteractionGraph& g);

/// Orders the blocks of `p` by running min-fill on the quotient graph.
EliminationSequence order_blocks_min_fill(const InteractionGraph& g, const Partition& p);

}  // namespace nsdp

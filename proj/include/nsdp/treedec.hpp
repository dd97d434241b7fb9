#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsdp/elim_solver.hpp"
#include "nsdp/graph.hpp"
#include "nsdp/model.hpp"
#include "nsdp/ordering.hpp"

namespace nsdp {

/// Tree of bags. Bags hold ascending vertex ids; edges join bag indices.
struct TreeDecomposition {
  std::vector<std::vector<VarId>> bags;
  std::vector<std::pair<int, int>> edges;
  int root = 0;

  /// Parent bag of each bag when hung from `root` (-1 at the root). Throws
  /// Error when the edges do not form a tree.
  std::vector<int> parents() const;
  /// Bags in post-order (children before parents), children visited in
  /// ascending index order.
  std::vector<int> post_order() const;
};

/// One bag per elimination step: block plus recorded scope. Edges follow the
/// elimination tree; subtrees hanging off the virtual root are attached to
/// the last step's bag, which is the root.
TreeDecomposition td_from_elimination(const InteractionGraph& g, const EliminationRecord& rec);

/// Empty iff `td` is a tree decomposition of `g`. Messages name the violated
/// condition: (i) vertex coverage, (ii) edge coverage, (iii) connected
/// occurrence.
std::vector<std::string> verify_td(const InteractionGraph& g, const TreeDecomposition& td);

/// Merges bags into tree-adjacent supersets until no such pair is left.
TreeDecomposition absorb(TreeDecomposition td);

int width(const TreeDecomposition& td);

struct BagSubproblem {
  int bag = 0;
  int parent = -1;
  std::vector<std::size_t> constraints;
  std::vector<std::size_t> components;
  std::vector<VarId> separator;  ///< bag ∩ parent bag; empty at the root
};

/// Assigns every constraint and component to exactly one covering bag: the
/// one closest to the root, lowest index on ties.
std::vector<BagSubproblem> assign_to_bags(const Problem& p, const TreeDecomposition& td);

struct TreeDpResult {
  Value value = kNegInf;
  /// Indexed by bag: block = bag minus separator, scope = separator.
  std::vector<LocalTable> tables;
  std::vector<int> post_order;
};

/// Bottom-up pass: each bag maximizes its own members plus its children's
/// tables over the variables it does not share with its parent.
TreeDpResult tree_dp_forward(const Problem& p, const TreeDecomposition& td);

Solution solve_tree_dp(const Problem& p, const TreeDecomposition& td);

}  // namespace nsdp

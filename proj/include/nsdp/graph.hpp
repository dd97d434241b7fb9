#pragma once

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "nsdp/model.hpp"

namespace nsdp {

/// Undirected edge stored with first < second.
using Edge = std::pair<VarId, VarId>;

inline Edge make_edge(VarId a, VarId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

using VertexSet = std::set<VarId>;

/// Simple undirected graph over ids 0..capacity-1. Eliminated vertices stay
/// addressable by id but are no longer present, so ids remain aligned with
/// the problem's variables.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(std::size_t n);

  std::size_t capacity() const { return adjacency_.size(); }
  std::size_t num_vertices() const { return num_present_; }
  std::size_t num_edges() const;

  bool contains(VarId v) const;
  bool adjacent(VarId u, VarId v) const;
  const VertexSet& neighbors(VarId v) const;
  int degree(VarId v) const { return static_cast<int>(neighbors(v).size()); }

  /// Present vertices in ascending id order.
  std::vector<VarId> vertices() const;
  /// All edges, sorted.
  std::vector<Edge> edges() const;

  /// Returns true when the edge is new. Self-loops are ignored.
  bool add_edge(VarId u, VarId v);
  void add_clique(std::span<const VarId> vs);
  /// Deletes a vertex and its incident edges.
  void remove_vertex(VarId v);

  bool operator==(const InteractionGraph&) const = default;

 private:
  void require(VarId v) const;

  std::vector<VertexSet> adjacency_;
  std::vector<bool> present_;
  std::size_t num_present_ = 0;
};

/// Ordered sequence of disjoint non-empty blocks covering all vertices.
struct Partition {
  std::vector<std::vector<VarId>> blocks;

  /// Empty iff `blocks` partition the present vertices of `g`.
  std::vector<std::string> violations(const InteractionGraph& g) const;
  static Partition singletons(const InteractionGraph& g);
};

InteractionGraph build_interaction_graph(const Problem& p);

/// Open neighborhood of S (union of neighbors minus S); closed adds S.
VertexSet neighborhood(const InteractionGraph& g, const VertexSet& s, bool closed = false);

struct VertexElimination {
  InteractionGraph graph;
  std::vector<Edge> fill;
};

/// Completes Nb(v) into a clique, then deletes v.
VertexElimination eliminate_vertex(const InteractionGraph& g, VarId v);

/// Block form: completes Nb(block) into a clique, then deletes the block.
VertexElimination eliminate_vertices(const InteractionGraph& g, std::span<const VarId> block);

/// Graph over block indices; blocks i,k adjacent iff some edge joins them.
InteractionGraph quotient_graph(const InteractionGraph& g, const Partition& p);

enum class Indistinguishability {
  kClosed,  ///< equal closed neighborhoods (adjacent twins)
  kOpen,    ///< non-adjacent, equal open neighborhoods
  kUnion,   ///< finest partition coarser than both of the above
};

/// Blocks ordered by smallest member; members ascending.
Partition indistinguishable_partition(const InteractionGraph& g, Indistinguishability mode);

/// Maximum-cardinality search visit order (first visited first). Ties go to
/// the lowest id.
std::vector<VarId> mcs_visit_order(const InteractionGraph& g);

/// True iff the reverse MCS order eliminates without fill.
bool is_chordal(const InteractionGraph& g);

}  // namespace nsdp

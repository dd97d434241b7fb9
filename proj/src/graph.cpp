#include "nsdp/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nsdp {

InteractionGraph::InteractionGraph(std::size_t n) : adjacency_(n), present_(n, true), num_present_(n) {}

std::size_t InteractionGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& nb : adjacency_) twice += nb.size();
  return twice / 2;
}

bool InteractionGraph::contains(VarId v) const {
  return v >= 0 && static_cast<std::size_t>(v) < present_.size() && present_[v];
}

void InteractionGraph::require(VarId v) const {
  if (!contains(v)) throw InputError("unknown vertex " + std::to_string(v));
}

bool InteractionGraph::adjacent(VarId u, VarId v) const {
  require(u);
  require(v);
  return adjacency_[u].contains(v);
}

const VertexSet& InteractionGraph::neighbors(VarId v) const {
  require(v);
  return adjacency_[v];
}

std::vector<VarId> InteractionGraph::vertices() const {
  std::vector<VarId> out;
  out.reserve(num_present_);
  for (std::size_t v = 0; v < present_.size(); ++v)
    if (present_[v]) out.push_back(static_cast<VarId>(v));
  return out;
}

std::vector<Edge> InteractionGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < adjacency_.size(); ++u)
    for (VarId v : adjacency_[u])
      if (static_cast<VarId>(u) < v) out.emplace_back(static_cast<VarId>(u), v);
  return out;
}

bool InteractionGraph::add_edge(VarId u, VarId v) {
  require(u);
  require(v);
  if (u == v) return false;
  const bool inserted = adjacency_[u].insert(v).second;
  adjacency_[v].insert(u);
  return inserted;
}

void InteractionGraph::add_clique(std::span<const VarId> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) add_edge(vs[i], vs[j]);
}

void InteractionGraph::remove_vertex(VarId v) {
  require(v);
  for (VarId u : adjacency_[v]) adjacency_[u].erase(v);
  adjacency_[v].clear();
  present_[v] = false;
  --num_present_;
}

std::vector<std::string> Partition::violations(const InteractionGraph& g) const {
  std::vector<std::string> out;
  std::vector<int> seen(g.capacity(), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) out.push_back("block " + std::to_string(b) + " is empty");
    for (VarId v : blocks[b]) {
      if (!g.contains(v)) {
        out.push_back("block " + std::to_string(b) + " names unknown vertex " + std::to_string(v));
        continue;
      }
      if (++seen[v] == 2) out.push_back("vertex " + std::to_string(v) + " appears in more than one block");
    }
  }
  for (VarId v : g.vertices())
    if (seen[v] == 0) out.push_back("vertex " + std::to_string(v) + " is not covered");
  return out;
}

Partition Partition::singletons(const InteractionGraph& g) {
  Partition p;
  for (VarId v : g.vertices()) p.blocks.push_back({v});
  return p;
}

InteractionGraph build_interaction_graph(const Problem& p) {
  InteractionGraph g(p.num_variables());
  for (const auto& c : p.objective()) g.add_clique(component_scope(c));
  for (const auto& c : p.constraints()) g.add_clique(c.scope());
  return g;
}

VertexSet neighborhood(const InteractionGraph& g, const VertexSet& s, bool closed) {
  VertexSet out;
  for (VarId v : s) {
    const auto& nb = g.neighbors(v);
    out.insert(nb.begin(), nb.end());
  }
  if (closed) {
    out.insert(s.begin(), s.end());
  } else {
    for (VarId v : s) out.erase(v);
  }
  return out;
}

VertexElimination eliminate_vertices(const InteractionGraph& g, std::span<const VarId> block) {
  const VertexSet members(block.begin(), block.end());
  const VertexSet nb = neighborhood(g, members);
  VertexElimination out{g, {}};
  const std::vector<VarId> scope(nb.begin(), nb.end());
  for (std::size_t i = 0; i < scope.size(); ++i)
    for (std::size_t j = i + 1; j < scope.size(); ++j)
      if (out.graph.add_edge(scope[i], scope[j])) out.fill.push_back(make_edge(scope[i], scope[j]));
  for (VarId v : members) out.graph.remove_vertex(v);
  return out;
}

VertexElimination eliminate_vertex(const InteractionGraph& g, VarId v) {
  const VarId block[] = {v};
  return eliminate_vertices(g, block);
}

InteractionGraph quotient_graph(const InteractionGraph& g, const Partition& p) {
  if (auto bad = p.violations(g); !bad.empty()) throw InputError("invalid partition: " + bad.front());
  std::vector<int> block_of(g.capacity(), -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (VarId v : p.blocks[b]) block_of[v] = static_cast<int>(b);
  InteractionGraph q(p.blocks.size());
  for (const auto& [u, v] : g.edges())
    if (block_of[u] != block_of[v]) q.add_edge(block_of[u], block_of[v]);
  return q;
}

namespace {

// Union-find over vertex ids, used to merge the two twin relations.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void group_by_key(const InteractionGraph& g, bool closed, DisjointSets& sets) {
  std::map<VertexSet, VarId> first_with;
  for (VarId v : g.vertices()) {
    VertexSet key = g.neighbors(v);
    if (closed) key.insert(v);
    // Equal open neighborhoods already imply non-adjacency.
    auto [it, inserted] = first_with.emplace(std::move(key), v);
    if (!inserted) sets.unite(it->second, v);
  }
}

}  // namespace

Partition indistinguishable_partition(const InteractionGraph& g, Indistinguishability mode) {
  DisjointSets sets(g.capacity());
  if (mode != Indistinguishability::kOpen) group_by_key(g, true, sets);
  if (mode != Indistinguishability::kClosed) group_by_key(g, false, sets);

  Partition out;
  std::map<int, std::size_t> block_of_root;
  for (VarId v : g.vertices()) {
    const int root = sets.find(v);
    auto [it, inserted] = block_of_root.emplace(root, out.blocks.size());
    if (inserted) out.blocks.emplace_back();
    out.blocks[it->second].push_back(v);
  }
  return out;
}

std::vector<VarId> mcs_visit_order(const InteractionGraph& g) {
  std::vector<int> weight(g.capacity(), 0);
  std::vector<bool> visited(g.capacity(), false);
  std::vector<VarId> order;
  const auto vs = g.vertices();
  order.reserve(vs.size());
  for (std::size_t step = 0; step < vs.size(); ++step) {
    VarId best = -1;
    for (VarId v : vs)
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    visited[best] = true;
    order.push_back(best);
    for (VarId u : g.neighbors(best))
      if (!visited[u]) ++weight[u];
  }
  return order;
}

bool is_chordal(const InteractionGraph& g) {
  auto order = mcs_visit_order(g);
  std::reverse(order.begin(), order.end());
  std::vector<int> position(g.capacity(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  // Perfect elimination ordering check: the later neighbors of each vertex
  // must be adjacent to its earliest later neighbor.
  for (VarId v : order) {
    VarId first_later = -1;
    std::vector<VarId> later;
    for (VarId u : g.neighbors(v)) {
      if (position[u] < position[v]) continue;
      later.push_back(u);
      if (first_later < 0 || position[u] < position[first_later]) first_later = u;
    }
    for (VarId u : later)
      if (u != first_later && !g.adjacent(u, first_later)) return false;
  }
  return true;
}

}  // namespace nsdp

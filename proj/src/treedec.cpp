#include "nsdp/treedec.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace nsdp {

namespace {

std::vector<std::vector<int>> adjacency_of(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj(td.bags.size());
  for (const auto& [a, b] : td.edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= td.bags.size() ||
        static_cast<std::size_t>(b) >= td.bags.size())
      throw Error("tree edge references unknown bag");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

bool subset_of(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<VarId> intersect(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  std::vector<VarId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string names(const std::vector<VarId>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "}";
}

}  // namespace

std::vector<int> TreeDecomposition::parents() const {
  if (bags.empty()) return {};
  if (edges.size() + 1 != bags.size()) throw Error("tree edges do not form a tree");
  if (root < 0 || static_cast<std::size_t>(root) >= bags.size()) throw Error("root is not a bag");
  const auto adj = adjacency_of(*this);
  std::vector<int> parent(bags.size(), -2);
  parent[root] = -1;
  std::vector<int> stack{root};
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int b = stack.back();
    stack.pop_back();
    for (int c : adj[b]) {
      if (parent[c] != -2) continue;
      parent[c] = b;
      ++reached;
      stack.push_back(c);
    }
  }
  if (reached != bags.size()) throw Error("tree edges do not form a tree");
  return parent;
}

std::vector<int> TreeDecomposition::post_order() const {
  const auto parent = parents();
  std::vector<std::vector<int>> children(bags.size());
  for (std::size_t b = 0; b < bags.size(); ++b)
    if (parent[b] >= 0) children[parent[b]].push_back(static_cast<int>(b));
  std::vector<int> out;
  out.reserve(bags.size());
  std::function<void(int)> visit = [&](int b) {
    for (int c : children[b]) visit(c);
    out.push_back(b);
  };
  if (!bags.empty()) visit(root);
  return out;
}

TreeDecomposition td_from_elimination(const InteractionGraph& g, const EliminationRecord& rec) {
  (void)g;
  TreeDecomposition td;
  if (rec.steps.empty()) return td;
  for (const auto& step : rec.steps) {
    std::vector<VarId> bag = step.block;
    bag.insert(bag.end(), step.scope.begin(), step.scope.end());
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
  }
  const auto tree = elimination_tree(rec);
  td.root = static_cast<int>(rec.steps.size()) - 1;
  for (std::size_t i = 0; i + 1 < rec.steps.size(); ++i) {
    const int parent = tree.parent[i] == EliminationTree::kRoot ? td.root : tree.parent[i];
    td.edges.emplace_back(static_cast<int>(i), parent);
  }
  return td;
}

std::vector<std::string> verify_td(const InteractionGraph& g, const TreeDecomposition& td) {
  std::vector<std::string> issues;
  std::vector<std::vector<int>> adj;
  try {
    td.parents();
    adj = adjacency_of(td);
  } catch (const Error& e) {
    issues.emplace_back(std::string("tree structure: ") + e.what());
    return issues;
  }

  std::map<VarId, std::vector<int>> occurrences;
  for (std::size_t b = 0; b < td.bags.size(); ++b) {
    if (!std::is_sorted(td.bags[b].begin(), td.bags[b].end()))
      issues.push_back("bag " + std::to_string(b) + " is not sorted");
    for (VarId v : td.bags[b]) {
      if (!g.contains(v)) issues.push_back("(i) bag " + std::to_string(b) + " names unknown vertex " + std::to_string(v));
      occurrences[v].push_back(static_cast<int>(b));
    }
  }

  for (VarId v : g.vertices())
    if (!occurrences.contains(v)) issues.push_back("(i) vertex " + std::to_string(v) + " is in no bag");

  for (const auto& [u, v] : g.edges()) {
    const bool covered = std::any_of(td.bags.begin(), td.bags.end(), [&](const auto& bag) {
      return std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v);
    });
    if (!covered)
      issues.push_back("(ii) edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag");
  }

  // (iii): the bags holding v must induce a connected subtree.
  for (const auto& [v, holders] : occurrences) {
    std::vector<bool> holds(td.bags.size(), false), seen(td.bags.size(), false);
    for (int b : holders) holds[b] = true;
    std::vector<int> stack{holders.front()};
    seen[holders.front()] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int b = stack.back();
      stack.pop_back();
      for (int c : adj[b]) {
        if (!holds[c] || seen[c]) continue;
        seen[c] = true;
        ++reached;
        stack.push_back(c);
      }
    }
    if (reached != holders.size())
      issues.push_back("(iii) bags containing vertex " + std::to_string(v) + " are not connected");
  }
  return issues;
}

TreeDecomposition absorb(TreeDecomposition td) {
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t e = 0; e < td.edges.size() && !merged; ++e) {
      auto [a, b] = td.edges[e];
      if (!subset_of(td.bags[a], td.bags[b])) {
        if (!subset_of(td.bags[b], td.bags[a])) continue;
        std::swap(a, b);
      }
      // Bag a disappears into b; a's other neighbours attach to b.
      td.edges.erase(td.edges.begin() + static_cast<std::ptrdiff_t>(e));
      for (auto& [x, y] : td.edges) {
        if (x == a) x = b;
        if (y == a) y = b;
      }
      if (td.root == a) td.root = b;
      td.bags.erase(td.bags.begin() + a);
      const auto shift = [a](int i) { return i > a ? i - 1 : i; };
      for (auto& [x, y] : td.edges) {
        x = shift(x);
        y = shift(y);
      }
      td.root = shift(td.root);
      merged = true;
    }
  }
  return td;
}

int width(const TreeDecomposition& td) {
  std::size_t largest = 0;
  for (const auto& bag : td.bags) largest = std::max(largest, bag.size());
  return static_cast<int>(largest) - 1;
}

std::vector<BagSubproblem> assign_to_bags(const Problem& p, const TreeDecomposition& td) {
  const auto parent = td.parents();
  std::vector<int> depth(td.bags.size(), 0);
  // Parents precede children when walking the post-order backwards.
  const auto order = td.post_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) depth[*it] = depth[parent[*it]] + 1;

  std::vector<BagSubproblem> out(td.bags.size());
  for (std::size_t b = 0; b < td.bags.size(); ++b) {
    out[b].bag = static_cast<int>(b);
    out[b].parent = parent[b];
    if (parent[b] >= 0) out[b].separator = intersect(td.bags[b], td.bags[parent[b]]);
  }
  const auto home = [&](const std::vector<VarId>& scope, const std::string& what) {
    int best = -1;
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
      if (!subset_of(scope, td.bags[b])) continue;
      if (best < 0 || depth[b] < depth[best]) best = static_cast<int>(b);
    }
    if (best < 0) throw Error("invalid tree decomposition: no bag covers " + what + " " + names(scope));
    return best;
  };
  for (std::size_t k = 0; k < p.objective().size(); ++k)
    out[home(component_scope(p.objective()[k]), "objective component")].components.push_back(k);
  for (std::size_t i = 0; i < p.constraints().size(); ++i)
    out[home(p.constraints()[i].scope(), "constraint")].constraints.push_back(i);
  return out;
}

TreeDpResult tree_dp_forward(const Problem& p, const TreeDecomposition& td) {
  const auto subproblems = assign_to_bags(p, td);
  TreeDpResult out;
  out.post_order = td.post_order();
  out.tables.resize(td.bags.size());
  std::vector<std::vector<int>> children(td.bags.size());
  for (const auto& sp : subproblems)
    if (sp.parent >= 0) children[sp.parent].push_back(sp.bag);

  std::vector<std::shared_ptr<const LocalTable>> done(td.bags.size());
  for (int b : out.post_order) {
    const auto& sp = subproblems[b];
    std::vector<Factor> factors;
    for (std::size_t k : sp.components) factors.push_back(Factor::original(p.objective()[k]));
    for (int c : children[b]) factors.push_back(Factor::generated(done[c]));
    std::vector<VarId> block;
    std::set_difference(td.bags[b].begin(), td.bags[b].end(), sp.separator.begin(), sp.separator.end(),
                        std::back_inserter(block));
    done[b] = std::make_shared<const LocalTable>(maximize_locally(p, std::move(block), sp.separator, sp.constraints, factors));
  }
  for (std::size_t b = 0; b < td.bags.size(); ++b) out.tables[b] = *done[b];
  if (!td.bags.empty()) out.value = out.tables[td.root].values.front();
  return out;
}

Solution solve_tree_dp(const Problem& p, const TreeDecomposition& td) {
  if (auto bad = verify_td(build_interaction_graph(p), td); !bad.empty())
    throw InputError("invalid tree decomposition: " + bad.front());
  const auto dp = tree_dp_forward(p, td);

  Solution s;
  s.stats.induced_width = width(td);
  s.stats.bags = td.bags.size();
  s.stats.tables = dp.tables.size();
  for (const auto& t : dp.tables) s.stats.max_table_entries = std::max(s.stats.max_table_entries, t.size());
  if (dp.value == kNegInf) return s;

  // Post-order lists children before parents, which is exactly the
  // elimination order the backward pass replays in reverse.
  std::vector<LocalTable> ordered;
  ordered.reserve(dp.tables.size());
  for (int b : dp.post_order) ordered.push_back(dp.tables[b]);
  s.status = Status::kOptimal;
  s.value = dp.value;
  s.assignment = solve_backward(ordered, p.num_variables());
  return s;
}

}  // namespace nsdp

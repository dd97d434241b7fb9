#include "nsdp/elim_solver.hpp"

#include <algorithm>
#include <set>

namespace nsdp {

std::size_t LocalTable::row_of(std::span<const Value> scope_values) const {
  if (scope_values.size() != scope.size()) throw Error("scope arity mismatch");
  std::size_t row = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    const auto& dom = scope_domains[i];
    auto it = std::lower_bound(dom.begin(), dom.end(), scope_values[i]);
    if (it == dom.end() || *it != scope_values[i]) throw Error("value outside a scope domain");
    row = row * dom.size() + static_cast<std::size_t>(it - dom.begin());
  }
  return row;
}

std::size_t LocalTable::row_of(const Assignment& a) const {
  std::vector<Value> vals;
  vals.reserve(scope.size());
  for (VarId v : scope) vals.push_back(a[v]);
  return row_of(vals);
}

Factor Factor::original(const ObjectiveComponent& c) { return Factor{&c, component_scope(c)}; }

Factor Factor::generated(std::shared_ptr<const LocalTable> t) {
  auto scope = t->scope;
  return Factor{std::move(t), std::move(scope)};
}

namespace {

// A factor flattened for evaluation against dense index/value vectors.
struct CompiledFactor {
  bool linear = false;
  VarId var = 0;
  Value coef = 0;
  const std::vector<Value>* values = nullptr;
  std::vector<std::pair<VarId, std::size_t>> strides;

  Value eval(const std::vector<int>& idx, const std::vector<Value>& val) const {
    if (linear) return coef * val[var];
    std::size_t row = 0;
    for (const auto& [v, stride] : strides) row += static_cast<std::size_t>(idx[v]) * stride;
    return (*values)[row];
  }
};

std::vector<std::pair<VarId, std::size_t>> row_major_strides(std::span<const VarId> scope,
                                                             std::span<const std::size_t> sizes) {
  std::vector<std::pair<VarId, std::size_t>> out(scope.size());
  std::size_t stride = 1;
  for (std::size_t i = scope.size(); i-- > 0;) {
    out[i] = {scope[i], stride};
    stride *= sizes[i];
  }
  return out;
}

CompiledFactor compile(const Problem& p, const Factor& f) {
  CompiledFactor out;
  if (const auto* comp = std::get_if<const ObjectiveComponent*>(&f.source)) {
    if (const auto* lin = std::get_if<LinearTerm>(*comp)) {
      out.linear = true;
      out.var = lin->var;
      out.coef = lin->coef;
      return out;
    }
    const auto& table = std::get<TableComponent>(**comp);
    std::vector<std::size_t> sizes;
    for (VarId v : table.scope) sizes.push_back(p.variable(v).domain.size());
    out.values = &table.values;
    out.strides = row_major_strides(table.scope, sizes);
    return out;
  }
  const auto& table = *std::get<std::shared_ptr<const LocalTable>>(f.source);
  std::vector<std::size_t> sizes;
  for (const auto& dom : table.scope_domains) sizes.push_back(dom.size());
  out.values = &table.values;
  out.strides = row_major_strides(table.scope, sizes);
  return out;
}

// Steps `digits` through the mixed-radix space of `vars` (last fastest).
// Returns false after wrapping around.
bool advance(std::span<const VarId> vars, const Problem& p, std::vector<int>& idx, std::vector<Value>& val) {
  for (std::size_t i = vars.size(); i-- > 0;) {
    const VarId v = vars[i];
    const auto& dom = p.variable(v).domain;
    if (static_cast<std::size_t>(++idx[v]) < dom.size()) {
      val[v] = dom[idx[v]];
      return true;
    }
    idx[v] = 0;
    val[v] = dom[0];
  }
  return false;
}

}  // namespace

LocalTable maximize_locally(const Problem& p, std::vector<VarId> block, std::vector<VarId> scope,
                            std::span<const std::size_t> constraints, std::span<const Factor> factors) {
  LocalTable t;
  t.block = std::move(block);
  t.scope = std::move(scope);
  for (VarId v : t.scope) t.scope_domains.push_back(p.variable(v).domain);
  const std::size_t rows = p.table_size(t.scope);
  t.values.assign(rows, kNegInf);
  t.argmax.assign(rows, {});

  std::vector<CompiledFactor> compiled;
  compiled.reserve(factors.size());
  for (const auto& f : factors) compiled.push_back(compile(p, f));

  const std::size_t n = p.num_variables();
  std::vector<int> idx(n, 0);
  std::vector<Value> val(n);
  for (std::size_t v = 0; v < n; ++v) val[v] = p.variables()[v].domain.front();

  for (std::size_t row = 0; row < rows; ++row) {
    Value best = kNegInf;
    do {
      bool ok = true;
      for (std::size_t ci : constraints) {
        const auto& c = p.constraints()[ci];
        Value lhs = 0;
        for (const auto& term : c.terms) lhs += term.coef * val[term.var];
        if (!c.holds(lhs)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Value score = 0;
      for (const auto& f : compiled) {
        score = add_scores(score, f.eval(idx, val));
        if (score == kNegInf) break;
      }
      if (score == kNegInf || (best != kNegInf && score <= best)) continue;
      best = score;
      auto& arg = t.argmax[row];
      arg.clear();
      for (VarId v : t.block) arg.push_back(val[v]);
    } while (advance(t.block, p, idx, val));
    t.values[row] = best;
    advance(t.scope, p, idx, val);
  }
  return t;
}

std::vector<Bucket> bucket_partition(const Problem& p, const EliminationSequence& seq) {
  std::vector<Bucket> buckets(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) buckets[i].block = seq[i];
  auto earliest = [&](std::span<const VarId> scope) {
    int step = static_cast<int>(seq.size());
    for (VarId v : scope) step = std::min(step, seq.step_of(v));
    return static_cast<std::size_t>(step - 1);
  };
  for (std::size_t k = 0; k < p.objective().size(); ++k)
    buckets[earliest(component_scope(p.objective()[k]))].components.push_back(k);
  for (std::size_t i = 0; i < p.constraints().size(); ++i)
    buckets[earliest(p.constraints()[i].scope())].constraints.push_back(i);
  return buckets;
}

SolveState SolveState::initial(const Problem& p) {
  SolveState s;
  s.problem_ = &p;
  s.graph_ = build_interaction_graph(p);
  for (std::size_t i = 0; i < p.constraints().size(); ++i) s.constraints_.push_back(i);
  for (const auto& c : p.objective()) s.factors_.push_back(Factor::original(c));
  return s;
}

StepResult eliminate_block(SolveState state, std::span<const VarId> block) {
  if (block.empty()) throw InputError("empty block");
  for (VarId v : block)
    if (!state.graph_.contains(v)) throw InputError("block variable " + std::to_string(v) + " already eliminated");
  const std::set<VarId> members(block.begin(), block.end());
  const auto touches = [&](std::span<const VarId> scope) {
    return std::any_of(scope.begin(), scope.end(), [&](VarId v) { return members.contains(v); });
  };

  const Problem& p = *state.problem_;
  std::set<VarId> scope;
  std::vector<std::size_t> gathered_constraints, kept_constraints;
  for (std::size_t ci : state.constraints_) {
    const auto s = p.constraints()[ci].scope();
    if (touches(s)) {
      gathered_constraints.push_back(ci);
      scope.insert(s.begin(), s.end());
    } else {
      kept_constraints.push_back(ci);
    }
  }
  std::vector<Factor> gathered_factors, kept_factors;
  for (auto& f : state.factors_) {
    if (touches(f.scope)) {
      scope.insert(f.scope.begin(), f.scope.end());
      gathered_factors.push_back(std::move(f));
    } else {
      kept_factors.push_back(std::move(f));
    }
  }
  for (VarId v : members) scope.erase(v);

  auto table = std::make_shared<const LocalTable>(
      maximize_locally(p, std::vector<VarId>(members.begin(), members.end()),
                       std::vector<VarId>(scope.begin(), scope.end()), gathered_constraints, gathered_factors));

  state.constraints_ = std::move(kept_constraints);
  kept_factors.push_back(Factor::generated(table));
  state.factors_ = std::move(kept_factors);
  state.tables_.push_back(table);
  state.graph_ = eliminate_vertices(state.graph_, block).graph;
  return StepResult{std::move(table), std::move(state)};
}

ForwardResult solve_forward(const Problem& p, const EliminationSequence& seq) {
  SolveState state = SolveState::initial(p);
  if (auto bad = Partition{seq.blocks()}.violations(state.graph()); !bad.empty())
    throw InputError("invalid elimination sequence: " + bad.front());
  for (const auto& block : seq.blocks()) state = eliminate_block(std::move(state), block).state;

  // Every remaining factor now has an empty scope: one per connected
  // component of the interaction graph.
  ForwardResult out;
  out.value = 0;
  for (const auto& f : state.factors()) {
    const auto& table = *std::get<std::shared_ptr<const LocalTable>>(f.source);
    out.value = add_scores(out.value, table.values.front());
  }
  for (const auto& t : state.tables()) out.tables.push_back(*t);
  return out;
}

Assignment solve_backward(std::span<const LocalTable> tables, std::size_t num_variables) {
  Assignment a(num_variables);
  for (auto it = tables.rbegin(); it != tables.rend(); ++it) {
    const std::size_t row = it->row_of(a);
    if (!it->feasible(row)) throw Error("internal inconsistency: backward pass reached an infeasible table row");
    for (std::size_t i = 0; i < it->block.size(); ++i) a.set(it->block[i], it->argmax[row][i]);
  }
  return a;
}

Solution solve(const Problem& p, const EliminationSequence& seq) {
  const auto rec = elimination_game(build_interaction_graph(p), seq);
  auto forward = solve_forward(p, seq);

  Solution s;
  s.stats.induced_width = rec.induced_width;
  s.stats.fill_edges = rec.fill.size();
  s.stats.tables = forward.tables.size();
  for (const auto& t : forward.tables) s.stats.max_table_entries = std::max(s.stats.max_table_entries, t.size());
  if (forward.value == kNegInf) return s;
  s.status = Status::kOptimal;
  s.value = forward.value;
  s.assignment = solve_backward(forward.tables, p.num_variables());
  return s;
}

}  // namespace nsdp

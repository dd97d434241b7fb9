#pragma once

// Forward/backward local elimination. Each step eliminates one block of
// variables by complete enumeration, producing a LocalTable over the
// block's neighborhood; the tables are then replayed in reverse to read off
// an optimal assignment.

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "nsdp/graph.hpp"
#include "nsdp/model.hpp"
#include "nsdp/ordering.hpp"

namespace nsdp {

/// Optimal local value and maximizer of a block as a function of its scope.
/// Rows are row-major over the scope domains (last scope variable fastest).
struct LocalTable {
  std::vector<VarId> block;
  std::vector<VarId> scope;
  std::vector<std::vector<Value>> scope_domains;
  std::vector<Value> values;                ///< kNegInf on infeasible rows
  std::vector<std::vector<Value>> argmax;   ///< block values; empty on infeasible rows

  std::size_t size() const { return values.size(); }
  bool feasible(std::size_t row) const { return values[row] != kNegInf; }
  /// Row selected by the scope values in `a`.
  std::size_t row_of(const Assignment& a) const;
  /// Row selected by explicit scope values, in scope order.
  std::size_t row_of(std::span<const Value> scope_values) const;
};

/// A member of the current objective: an original component or a table
/// produced by an earlier elimination.
struct Factor {
  std::variant<const ObjectiveComponent*, std::shared_ptr<const LocalTable>> source;
  std::vector<VarId> scope;  ///< ascending

  static Factor original(const ObjectiveComponent& c);
  static Factor generated(std::shared_ptr<const LocalTable> t);
};

/// Maximizes the sum of `factors` over all assignments of `block` subject to
/// `constraints`, separately for each assignment of `scope`. Maximizers are
/// enumerated row-major, so ties go to the lexicographically smallest one.
LocalTable maximize_locally(const Problem& p, std::vector<VarId> block, std::vector<VarId> scope,
                            std::span<const std::size_t> constraints, std::span<const Factor> factors);

struct Bucket {
  std::vector<VarId> block;
  std::vector<std::size_t> constraints;  ///< indices into Problem::constraints()
  std::vector<std::size_t> components;   ///< indices into Problem::objective()
};

/// Places every constraint and objective component in the bucket of its
/// earliest-eliminated variable. Buckets come back in elimination order.
std::vector<Bucket> bucket_partition(const Problem& p, const EliminationSequence& seq);

struct StepResult;

/// The reduced problem between elimination steps.
class SolveState {
 public:
  static SolveState initial(const Problem& p);

  const Problem& problem() const { return *problem_; }
  const InteractionGraph& graph() const { return graph_; }
  const std::vector<std::size_t>& constraints() const { return constraints_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const std::vector<std::shared_ptr<const LocalTable>>& tables() const { return tables_; }

 private:
  friend StepResult eliminate_block(SolveState state, std::span<const VarId> block);

  const Problem* problem_ = nullptr;
  InteractionGraph graph_;
  std::vector<std::size_t> constraints_;
  std::vector<Factor> factors_;
  std::vector<std::shared_ptr<const LocalTable>> tables_;
};

struct StepResult {
  std::shared_ptr<const LocalTable> table;
  SolveState state;
};

/// Gathers every remaining constraint and factor touching `block`, solves
/// the local subproblem for each assignment of the gathered scope, and
/// installs the resulting table as a new factor.
StepResult eliminate_block(SolveState state, std::span<const VarId> block);

struct ForwardResult {
  Value value = kNegInf;  ///< kNegInf when the problem is infeasible
  std::vector<LocalTable> tables;
};

ForwardResult solve_forward(const Problem& p, const EliminationSequence& seq);

/// Replays tables last to first, reading each block from its stored argmax.
Assignment solve_backward(std::span<const LocalTable> tables, std::size_t num_variables);

Solution solve(const Problem& p, const EliminationSequence& seq);

}  // namespace nsdp

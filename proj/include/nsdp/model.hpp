#pragma once

// Sparse discrete optimization problems: finite-domain variables, an
// additive objective made of linear terms and tabular components, and
// linear constraints. The sense is always maximization.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nsdp {

using VarId = int;
using Value = std::int64_t;

/// Marks an infeasible local optimum. Absorbing under addition (see add_scores).
inline constexpr Value kNegInf = std::numeric_limits<Value>::min();

inline constexpr Value add_scores(Value a, Value b) noexcept {
  return (a == kNegInf || b == kNegInf) ? kNegInf : a + b;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, unknown names, invalid sequences.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Variable {
  VarId id = 0;
  std::string name;
  std::vector<Value> domain{0, 1};

  /// Position of `v` in the domain, or -1.
  int index_of(Value v) const;

  bool operator==(const Variable&) const = default;
};

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

std::string_view to_string(Relation r);

struct LinearTerm {
  VarId var = 0;
  Value coef = 0;

  bool operator==(const LinearTerm&) const = default;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kLessEqual;
  Value rhs = 0;
  std::string label;

  std::vector<VarId> scope() const;
  bool holds(Value lhs) const;

  bool operator==(const LinearConstraint&) const = default;
};

/// Dense table over the Cartesian product of the scope domains. Rows are
/// laid out row-major in domain order, the last scope variable varying
/// fastest.
struct TableComponent {
  std::vector<VarId> scope;
  std::vector<Value> values;

  bool operator==(const TableComponent&) const = default;
};

using ObjectiveComponent = std::variant<LinearTerm, TableComponent>;

std::vector<VarId> component_scope(const ObjectiveComponent& c);

/// Partial or total map from variable id to domain value.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_variables) : values_(num_variables) {}
  explicit Assignment(std::vector<Value> total);

  std::size_t size() const { return values_.size(); }
  bool has(VarId v) const { return values_.at(v).has_value(); }
  Value operator[](VarId v) const;
  void set(VarId v, Value value) { values_.at(v) = value; }
  bool is_total() const;
  std::vector<Value> to_vector() const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<std::optional<Value>> values_;
};

class Problem {
 public:
  VarId add_variable(std::string name, std::vector<Value> domain = {0, 1});
  void add_linear(VarId var, Value coef);
  void add_table(std::vector<VarId> scope, std::vector<Value> values);
  void add_constraint(LinearConstraint c);

  std::span<const Variable> variables() const { return variables_; }
  std::span<const ObjectiveComponent> objective() const { return objective_; }
  std::span<const LinearConstraint> constraints() const { return constraints_; }

  std::size_t num_variables() const { return variables_.size(); }
  const Variable& variable(VarId v) const { return variables_.at(v); }
  std::optional<VarId> find(std::string_view name) const;
  /// Throws InputError when `name` is not declared.
  VarId id_of(std::string_view name) const;

  /// Number of rows a dense table over `scope` has.
  std::size_t table_size(std::span<const VarId> scope) const;

  bool operator==(const Problem&) const = default;

 private:
  std::vector<Variable> variables_;
  std::vector<ObjectiveComponent> objective_;
  std::vector<LinearConstraint> constraints_;
};

/// Empty iff the problem satisfies every structural invariant.
std::vector<std::string> validate_problem(const Problem& p);

/// Sum of all objective components under a total assignment.
Value objective_value(const Problem& p, const Assignment& a);

bool check_feasible(const Problem& p, const Assignment& a);

enum class Status { kOptimal, kInfeasible };

std::string_view to_string(Status s);

struct SolveStats {
  int induced_width = 0;
  std::size_t max_table_entries = 0;
  std::size_t fill_edges = 0;
  std::size_t bags = 0;
  std::size_t tables = 0;
};

struct Solution {
  Status status = Status::kInfeasible;
  std::optional<Value> value;
  std::optional<Assignment> assignment;
  SolveStats stats;

  bool optimal() const { return status == Status::kOptimal; }
};

}  // namespace nsdp

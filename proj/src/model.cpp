#include "nsdp/model.hpp"

#include <algorithm>
#include <set>

namespace nsdp {

int Variable::index_of(Value v) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), v);
  if (it == domain.end() || *it != v) return -1;
  return static_cast<int>(it - domain.begin());
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

std::string_view to_string(Status s) {
  return s == Status::kOptimal ? "OPTIMAL" : "INFEASIBLE";
}

std::vector<VarId> LinearConstraint::scope() const {
  std::vector<VarId> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.var);
  std::sort(out.begin(), out.end());
  return out;
}

bool LinearConstraint::holds(Value lhs) const {
  switch (relation) {
    case Relation::kLessEqual: return lhs <= rhs;
    case Relation::kEqual: return lhs == rhs;
    case Relation::kGreaterEqual: return lhs >= rhs;
  }
  return false;
}

std::vector<VarId> component_scope(const ObjectiveComponent& c) {
  if (const auto* lin = std::get_if<LinearTerm>(&c)) return {lin->var};
  const auto& table = std::get<TableComponent>(c);
  std::vector<VarId> out = table.scope;
  std::sort(out.begin(), out.end());
  return out;
}

Assignment::Assignment(std::vector<Value> total) : values_(total.size()) {
  for (std::size_t i = 0; i < total.size(); ++i) values_[i] = total[i];
}

Value Assignment::operator[](VarId v) const {
  const auto& slot = values_.at(v);
  if (!slot) throw Error("partial assignment: variable " + std::to_string(v) + " unassigned");
  return *slot;
}

bool Assignment::is_total() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<Value> Assignment::to_vector() const {
  std::vector<Value> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out.push_back((*this)[static_cast<VarId>(i)]);
  return out;
}

VarId Problem::add_variable(std::string name, std::vector<Value> domain) {
  const auto id = static_cast<VarId>(variables_.size());
  variables_.push_back(Variable{id, std::move(name), std::move(domain)});
  return id;
}

void Problem::add_linear(VarId var, Value coef) { objective_.emplace_back(LinearTerm{var, coef}); }

void Problem::add_table(std::vector<VarId> scope, std::vector<Value> values) {
  objective_.emplace_back(TableComponent{std::move(scope), std::move(values)});
}

void Problem::add_constraint(LinearConstraint c) { constraints_.push_back(std::move(c)); }

std::optional<VarId> Problem::find(std::string_view name) const {
  for (const auto& v : variables_)
    if (v.name == name) return v.id;
  return std::nullopt;
}

VarId Problem::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

std::size_t Problem::table_size(std::span<const VarId> scope) const {
  std::size_t rows = 1;
  for (VarId v : scope) rows *= variables_.at(v).domain.size();
  return rows;
}

namespace {

bool known(const Problem& p, VarId v) { return v >= 0 && static_cast<std::size_t>(v) < p.num_variables(); }

bool has_duplicates(std::vector<VarId> ids) {
  std::sort(ids.begin(), ids.end());
  return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
}

// Row of a dense table for the values `a` assigns to `scope`.
std::size_t table_row(const Problem& p, std::span<const VarId> scope, const Assignment& a) {
  std::size_t row = 0;
  for (VarId v : scope) {
    const auto& var = p.variable(v);
    const int idx = var.index_of(a[v]);
    if (idx < 0) throw Error("value outside the domain of " + var.name);
    row = row * var.domain.size() + static_cast<std::size_t>(idx);
  }
  return row;
}

}  // namespace

std::vector<std::string> validate_problem(const Problem& p) {
  std::vector<std::string> issues;
  if (p.num_variables() == 0) issues.emplace_back("problem has no variables");

  std::set<std::string> names;
  for (const auto& v : p.variables()) {
    if (!names.insert(v.name).second) issues.push_back("duplicate variable name '" + v.name + "'");
    if (v.domain.empty()) issues.push_back("variable '" + v.name + "' has an empty domain");
    if (!std::is_sorted(v.domain.begin(), v.domain.end()) ||
        std::adjacent_find(v.domain.begin(), v.domain.end()) != v.domain.end())
      issues.push_back("domain of '" + v.name + "' is not strictly increasing");
  }

  for (std::size_t k = 0; k < p.objective().size(); ++k) {
    const auto& c = p.objective()[k];
    const std::string where = "objective component " + std::to_string(k);
    if (const auto* lin = std::get_if<LinearTerm>(&c)) {
      if (!known(p, lin->var)) issues.push_back(where + ": unknown variable " + std::to_string(lin->var));
      continue;
    }
    const auto& table = std::get<TableComponent>(c);
    if (!std::all_of(table.scope.begin(), table.scope.end(), [&](VarId v) { return known(p, v); })) {
      issues.push_back(where + ": unknown variable in table scope");
      continue;
    }
    if (has_duplicates(table.scope)) issues.push_back(where + ": repeated variable in table scope");
    const auto rows = p.table_size(table.scope);
    if (table.values.size() != rows)
      issues.push_back(where + ": table has " + std::to_string(table.values.size()) + " entries, expected " +
                       std::to_string(rows));
  }

  for (std::size_t i = 0; i < p.constraints().size(); ++i) {
    const auto& c = p.constraints()[i];
    const std::string where = "constraint " + (c.label.empty() ? std::to_string(i) : c.label);
    if (c.terms.empty()) issues.push_back(where + ": no terms");
    bool all_known = true;
    for (const auto& t : c.terms) all_known = all_known && known(p, t.var);
    if (!all_known) {
      issues.push_back(where + ": unknown variable");
      continue;
    }
    if (has_duplicates(c.scope())) issues.push_back(where + ": repeated variable");
  }
  return issues;
}

Value objective_value(const Problem& p, const Assignment& a) {
  Value total = 0;
  for (const auto& c : p.objective()) {
    if (const auto* lin = std::get_if<LinearTerm>(&c)) {
      total += lin->coef * a[lin->var];
    } else {
      const auto& table = std::get<TableComponent>(c);
      total += table.values.at(table_row(p, table.scope, a));
    }
  }
  return total;
}

bool check_feasible(const Problem& p, const Assignment& a) {
  for (const auto& c : p.constraints()) {
    Value lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * a[t.var];
    if (!c.holds(lhs)) return false;
  }
  return true;
}

}  // namespace nsdp

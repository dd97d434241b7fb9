#pragma once

// Problems shared by the unit and acceptance suites.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "nsdp/model.hpp"
#include "nsdp/ordering.hpp"

namespace nsdp::testing {

// Seven binaries, four knapsack-like constraints:
//   max 2x1+3x2+x3+5x4+4x5+6x6+x7
//   C1: 3x1+4x2+x3 <= 6     C2: 2x2+3x3+3x4 <= 5
//   C3: 2x2+3x5 <= 4        C4: 2x3+3x6+2x7 <= 5
inline Problem primer() {
  Problem p;
  for (int i = 1; i <= 7; ++i) p.add_variable("x" + std::to_string(i));
  const Value coef[] = {2, 3, 1, 5, 4, 6, 1};
  for (VarId v = 0; v < 7; ++v) p.add_linear(v, coef[v]);
  p.add_constraint({{{0, 3}, {1, 4}, {2, 1}}, Relation::kLessEqual, 6, "C1"});
  p.add_constraint({{{1, 2}, {2, 3}, {3, 3}}, Relation::kLessEqual, 5, "C2"});
  p.add_constraint({{{1, 2}, {4, 3}}, Relation::kLessEqual, 4, "C3"});
  p.add_constraint({{{2, 2}, {5, 3}, {6, 2}}, Relation::kLessEqual, 5, "C4"});
  return p;
}

// Unconstrained: f1(x1,x2,x3) + f2(x2,x3,x4) + f3(x2,x5) + f4(x3,x6,x7).
inline Problem example3() {
  Problem p;
  for (int i = 1; i <= 7; ++i) p.add_variable("x" + std::to_string(i));
  p.add_table({0, 1, 2}, {2, 3, 4, 0, 5, 2, 4, 1});
  p.add_table({1, 2, 3}, {3, 1, 5, 2, 4, 1, 3, 0});
  p.add_table({1, 4}, {6, 2, 4, 5});
  p.add_table({2, 5, 6}, {5, 2, 3, 4, 2, 1, 3, 6});
  return p;
}

/// 0-based ids from 1-based names x1..x7.
inline std::vector<VarId> xs(std::initializer_list<int> ones) {
  std::vector<VarId> out;
  for (int i : ones) out.push_back(i - 1);
  return out;
}

inline std::vector<std::vector<VarId>> blocks(std::initializer_list<std::initializer_list<int>> bs) {
  std::vector<std::vector<VarId>> out;
  for (auto b : bs) out.push_back(xs(b));
  return out;
}

/// Binary variables, 1..max_constraints random linear constraints over
/// random subsets of size 1..4, objective and constraint coefficients in
/// [-5,5]. Some instances come out infeasible.
inline Problem random_problem(std::mt19937& rng, int n, int max_constraints = 8) {
  std::uniform_int_distribution<int> coef(-5, 5);
  Problem p;
  for (int i = 0; i < n; ++i) p.add_variable("v" + std::to_string(i));
  for (VarId v = 0; v < n; ++v) p.add_linear(v, coef(rng));
  const int m = std::uniform_int_distribution<int>(1, max_constraints)(rng);
  for (int k = 0; k < m; ++k) {
    std::vector<VarId> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const int arity = std::uniform_int_distribution<int>(1, std::min(4, n))(rng);
    LinearConstraint c;
    for (int i = 0; i < arity; ++i) {
      int a = coef(rng);
      if (a == 0) a = 1;
      c.terms.push_back({all[i], a});
    }
    // Right-hand side near the left-hand side of a random 0/1 point, so that
    // each constraint alone is usually satisfiable.
    Value at_point = 0;
    for (const auto& t : c.terms) at_point += t.coef * std::uniform_int_distribution<int>(0, 1)(rng);
    const int rel = std::uniform_int_distribution<int>(0, 5)(rng);
    c.relation = rel < 4 ? Relation::kLessEqual : (rel == 4 ? Relation::kGreaterEqual : Relation::kEqual);
    const int slack = std::uniform_int_distribution<int>(-1, 3)(rng);
    c.rhs = c.relation == Relation::kLessEqual ? at_point + slack
            : c.relation == Relation::kGreaterEqual ? at_point - slack
                                                    : at_point;
    c.label = "c" + std::to_string(k);
    p.add_constraint(std::move(c));
  }
  return p;
}

inline std::vector<VarId> random_order(std::mt19937& rng, int n) {
  std::vector<VarId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

/// Random ordered partition: a shuffled order cut into runs of 1..3.
inline std::vector<std::vector<VarId>> random_blocks(std::mt19937& rng, int n) {
  const auto order = random_order(rng, n);
  std::vector<std::vector<VarId>> out;
  for (std::size_t i = 0; i < order.size();) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::vector<VarId> b;
    for (std::size_t k = 0; k < len && i < order.size(); ++k) b.push_back(order[i++]);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace nsdp::testing

#include "nsdp/oracle.hpp"

namespace nsdp {

Solution brute_force(const Problem& p, std::size_t cap) {
  std::size_t space = 1;
  for (const auto& v : p.variables()) {
    if (v.domain.empty()) throw InputError("variable '" + v.name + "' has an empty domain");
    if (space > cap / v.domain.size())
      throw CapExceeded("assignment space exceeds the brute-force cap of " + std::to_string(cap));
    space *= v.domain.size();
  }

  const std::size_t n = p.num_variables();
  std::vector<std::size_t> digit(n, 0);
  std::vector<Value> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = p.variables()[i].domain.front();

  Solution best;
  for (std::size_t k = 0; k < space; ++k) {
    const Assignment a(values);
    if (check_feasible(p, a)) {
      const Value f = objective_value(p, a);
      if (!best.value || f > *best.value) {
        best.status = Status::kOptimal;
        best.value = f;
        best.assignment = a;
      }
    }
    for (std::size_t i = n; i-- > 0;) {
      const auto& dom = p.variables()[i].domain;
      if (++digit[i] < dom.size()) {
        values[i] = dom[digit[i]];
        break;
      }
      digit[i] = 0;
      values[i] = dom[0];
    }
  }
  return best;
}

}  // namespace nsdp

#pragma once

#include <cstddef>

#include "nsdp/model.hpp"

namespace nsdp {

inline constexpr std::size_t kDefaultBruteForceCap = std::size_t{1} << 24;

/// Raised when the assignment space exceeds the enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Exhaustive reference solver. Enumerates every total assignment in
/// lexicographic order (first variable slowest) and keeps the first
/// maximizer it sees. Uses only objective_value and check_feasible.
Solution brute_force(const Problem& p, std::size_t cap = kDefaultBruteForceCap);

}  // namespace nsdp

#pragma once

#include <cstdint>

namespace matchbound {

// Budgets shared by every exhaustive-search entry point. Exceeding max_nodes
// raises BudgetError; a count is never silently truncated.
struct SearchLimits {
  std::uint64_t max_nodes = 1'000'000'000;
  int threads = 1;
  int max_order = 12;  // guard for per-entry transversal enumeration
};

}  // namespace matchbound

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace sumprod {

/// Limits on exponential work. Operations project their intermediate counts
/// up front (or per step) and throw BudgetExceeded instead of thrashing.
struct Budget {
  std::size_t max_card = 24;
  std::uint64_t max_work = 100'000'000;
};

/// Throws BudgetExceeded when `projected` exceeds `budget.max_work`.
void charge(const Budget& budget, double projected, const std::string& what);
/// Throws BudgetExceeded when `n` exceeds `budget.max_card`.
void check_card(const Budget& budget, std::size_t n, const std::string& what);

}  // namespace sumprod

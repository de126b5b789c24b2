#include "search/common.hpp"

namespace mps::search {

void validate(const Budget& budget) {
  if (budget.mode == Budget::Mode::nodes && budget.nodes == 0) fail(ErrorCode::invalid_config, "node budget must be positive");
  if (budget.mode == Budget::Mode::time && !(budget.seconds > 0)) fail(ErrorCode::invalid_config, "time budget must be positive");
}

BudgetClock::BudgetClock(const Budget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

bool BudgetClock::exhausted(std::uint64_t expansions) const {
  if (budget_.mode == Budget::Mode::nodes) return expansions >= budget_.nodes;
  return elapsed() >= budget_.seconds;
}

double BudgetClock::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

}  // namespace mps::search

#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/game.hpp"

namespace mps::search {

// Either an expansion count (deterministic) or wall-clock seconds.
struct Budget {
  enum class Mode { nodes, time };
  Mode mode = Mode::nodes;
  std::uint64_t nodes = 0;
  double seconds = 0;

  static Budget node_budget(std::uint64_t n) { return {Mode::nodes, n, 0}; }
  static Budget time_budget(double s) { return {Mode::time, 0, s}; }
  static Budget unlimited() { return node_budget(std::numeric_limits<std::uint64_t>::max()); }
};

void validate(const Budget& budget);

// Tracks consumption of a Budget.
class BudgetClock {
 public:
  explicit BudgetClock(const Budget& budget);
  bool exhausted(std::uint64_t expansions) const;
  double elapsed() const;

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

struct RootEntry {
  Action action;
  PayoffVector c;
  PayoffVector v;
  std::uint64_t n = 0;
  bool r = false;
};

struct SearchResult {
  Action chosen;
  std::vector<RootEntry> root_entries;
  std::uint64_t expansions = 0;
  std::uint64_t iterations = 0;
  bool resolved_root = false;
  // Depth-limited searches: deepest completed depth and its value.
  int depth = 0;
  PayoffVector value;
  double scalar = 0;
  double seconds = 0;
};

}  // namespace mps::search

#pragma once

#include <random>

#include "eval/evaluator.hpp"
#include "search/common.hpp"

namespace mps::search {

// Multiplayer UCT. Each node keeps per-player reward sums; the mover picks
// the child maximizing mean_p + C sqrt(ln N / n), unvisited children first
// in ordinal order. Rewards are win/loss vectors mapped to [0, 1]. With an
// evaluator (MCTS_h) the playout is replaced by one call on the new node,
// whose outputs must already lie in [0, 1].
class Mcts {
 public:
  Mcts(const Game& game, double c, std::uint64_t seed, const eval::Evaluator* evaluator = nullptr);

  // Budget in node mode counts iterations.
  SearchResult search(const State& root, const Budget& budget);

 private:
  struct TreeNode {
    State state;
    std::vector<Action> actions;
    std::vector<int> children;  // -1 until expanded
    int expanded = 0;
    std::uint64_t visits = 0;
    PayoffVector reward;
  };

  int add_node(State s);
  PayoffVector simulate(const State& s);
  PayoffVector terminal_reward(const State& s) const;

  const Game& game_;
  double c_;
  std::mt19937_64 rng_;
  const eval::Evaluator* evaluator_;
  std::vector<TreeNode> tree_;
};

}  // namespace mps::search

#pragma once

#include <optional>
#include <unordered_map>

#include "eval/evaluator.hpp"
#include "search/common.hpp"

namespace mps::search {

enum class DepthAlgorithm { maxn, kbest, paranoid, brs, brs_plus };

struct DepthOptions {
  int k = 0;                 // kbest only
  bool pruning = true;       // alpha-beta cutoffs (paranoid, brs, brs+)
  bool table = true;         // transposition table / memo
  std::size_t table_capacity = 2'000'000;
  PlayerId root_player = -1;  // paranoid; -1 means the root mover
};

struct DepthOutcome {
  Action best{};
  bool has_action = false;
  PayoffVector value;   // max^n families
  double scalar = 0;    // paranoid families: root player's value
  bool cutoff = false;  // some non-terminal leaf was evaluated
  std::uint64_t expansions = 0;
};

// Depth-limited searches sharing one memo across calls (so iterative
// deepening reuses earlier work). Expansions count interior nodes whose
// children were generated; table hits are free.
class DepthSearch {
 public:
  DepthSearch(const Game& game, const eval::Evaluator& evaluator, DepthAlgorithm algorithm, DepthOptions options = {});

  // nullopt when `expansion_limit` or `clock` stops the search first.
  std::optional<DepthOutcome> run(const State& root, int depth,
                                  std::uint64_t expansion_limit = std::numeric_limits<std::uint64_t>::max(),
                                  const BudgetClock* clock = nullptr);
  void clear();

  DepthAlgorithm algorithm() const { return algorithm_; }

 private:
  struct Aborted {};
  struct VectorValue {
    PayoffVector value;
    Action best{};
    bool has_action = false;
    bool cut = false;       // a depth cutoff below
    bool complete = true;   // exact for any larger depth
  };
  struct Bound {
    double value;
    std::int8_t flag;  // 0 exact, 1 lower, 2 upper
    bool cut;
    int depth;
  };

  void count_expansion();
  PayoffVector leaf(const State& s);
  double scalar_leaf(const State& s);
  VectorValue maxn(const State& s, int depth);
  double paranoid(const State& s, int depth, double alpha, double beta, Action* best);
  double brs(const State& s, int depth, double alpha, double beta, int layer, Action* best);
  double brs_max(const State& s, int depth, double alpha, double beta, Action* best);
  double brs_opponents(const State& s, int depth, double alpha, double beta);
  double brs_phase(State s, PlayerId searched, int depth, double alpha, double beta);
  double brs_after_phase(const State& s, int depth, double alpha, double beta);
  State greedy_walk(State s, PlayerId stop_a, PlayerId stop_b, int& plies);
  Action greedy(const State& s);
  std::optional<double> probe(std::uint64_t key, int depth, double alpha, double beta);
  void store(std::uint64_t key, int depth, double value, double alpha, double beta, bool cut);

  const Game& game_;
  const eval::Evaluator& evaluator_;
  DepthAlgorithm algorithm_;
  DepthOptions options_;
  PlayerId root_player_ = 0;
  int phase_cap_ = 0;
  std::uint64_t expansions_ = 0;
  std::uint64_t limit_ = 0;
  const BudgetClock* clock_ = nullptr;
  bool cutoff_ = false;
  std::unordered_map<std::uint64_t, VectorValue> memo_;
  std::unordered_map<std::uint64_t, std::pair<VectorValue, int>> complete_;
  std::unordered_map<std::uint64_t, Bound> bounds_;
  std::unordered_map<ZobristKey, Action> greedy_;
};

// Convenience wrappers: one complete search at a fixed depth.
DepthOutcome maxn_depth(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth);
DepthOutcome kbest_maxn(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth, int k);
DepthOutcome paranoid(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth, PlayerId root_player = -1);
DepthOutcome brs(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth);
DepthOutcome brs_plus(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth);

// Depths 1, 2, ... until the budget runs out; a depth stopped midway is
// discarded. Depth 1 always completes. Stops early once a depth sees no
// depth cutoff (the whole tree fits).
SearchResult iterative_deepening(DepthSearch& search, const State& root, const Budget& budget, int max_depth = 512);

}  // namespace mps::search

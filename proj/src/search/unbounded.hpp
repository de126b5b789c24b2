#pragma once

#include <iosfwd>
#include <unordered_map>

#include "eval/evaluator.hpp"
#include "search/common.hpp"

namespace mps::search {

enum class Decision { best, safe };

// Per-action statistics of a stored state.
struct Entry {
  Action action;
  PayoffVector c;  // completion value
  PayoffVector v;  // partial max^n value
  std::uint64_t n = 0;
  bool r = false;
};

struct Node {
  PlayerId mover = 0;
  std::vector<Entry> entries;
};

// Decision rules over a stored node's entries; return an index. A solved
// loss for the mover (r and c_p = -1) ranks below every other entry.
int best_action(const std::vector<Entry>& entries, PlayerId mover);
int safe_action(const std::vector<Entry>& entries, PlayerId mover);

// Best-first max^n with completion: repeatedly descends along the best
// unresolved (c_p, v_p) entries, expands the first unstored state with one
// batched evaluator call, then backs values and resolution flags up the path.
class UnboundedMaxn {
 public:
  static constexpr std::size_t kDefaultCapacity = 4'000'000;

  UnboundedMaxn(const Game& game, const eval::Evaluator& evaluator, std::size_t capacity = kDefaultCapacity);

  // Clears the table and sets the root.
  void reset(const State& root);
  // One descend/expand/backup iteration. False when nothing was done: the
  // root is resolved or the table is full.
  bool step();

  SearchResult search(const State& root, const Budget& budget, Decision decision);
  SearchResult result(Decision decision) const;

  bool root_resolved() const;
  bool table_full() const { return full_; }
  std::uint64_t expansions() const { return expansions_; }
  std::uint64_t iterations() const { return iterations_; }
  const std::unordered_map<ZobristKey, Node>& table() const { return table_; }
  const Node* find(ZobristKey key) const;

  // One line per iteration: path length, expanded key, root entry deltas.
  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  struct Step {
    State state;
    int index;
  };
  void expand(const State& s);
  void backup(const std::vector<Step>& path, const State& leaf);

  const Game& game_;
  const eval::Evaluator& evaluator_;
  std::size_t capacity_;
  std::unordered_map<ZobristKey, Node> table_;
  State root_;
  std::uint64_t expansions_ = 0;
  std::uint64_t iterations_ = 0;
  bool full_ = false;
  std::ostream* trace_ = nullptr;
};

// Selection key used by descent and backup.
inline auto completion_key(const Entry& e, PlayerId p) { return std::pair<double, double>{e.c[p], e.v[p]}; }

}  // namespace mps::search

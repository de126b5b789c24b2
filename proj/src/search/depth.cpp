#include "search/depth.hpp"

#include <algorithm>
#include <limits>

#include "core/tiebreak.hpp"

namespace mps::search {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::int8_t kExact = 0, kLower = 1, kUpper = 2;

std::uint64_t mix(std::uint64_t key, int depth, int tag) {
  std::uint64_t z = static_cast<std::uint64_t>(depth) * 16 + static_cast<std::uint64_t>(tag) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return key ^ z ^ (z >> 31);
}

}  // namespace

DepthSearch::DepthSearch(const Game& game, const eval::Evaluator& evaluator, DepthAlgorithm algorithm, DepthOptions options)
    : game_(game), evaluator_(evaluator), algorithm_(algorithm), options_(options) {
  if (algorithm == DepthAlgorithm::kbest && options.k <= 0) fail(ErrorCode::invalid_config, "k-best max^n needs k >= 1");
  if (algorithm == DepthAlgorithm::brs && !game.supports_out_of_turn())
    fail(ErrorCode::capability_missing, "BRS needs out-of-turn moves, which " + game.name() + " does not support");
  if (options.root_player >= game.num_players()) fail(ErrorCode::invalid_config, "root player out of range");
  phase_cap_ = 4 * (game.num_players() - 1);
}

void DepthSearch::clear() {
  memo_.clear();
  complete_.clear();
  bounds_.clear();
  greedy_.clear();
}

void DepthSearch::count_expansion() {
  if (expansions_ >= limit_ || (clock_ && clock_->exhausted(expansions_))) throw Aborted{};
  ++expansions_;
}

PayoffVector DepthSearch::leaf(const State& s) {
  if (game_.is_terminal(s)) return game_.terminal_payoff(s);
  cutoff_ = true;
  return evaluator_.evaluate(s);
}

double DepthSearch::scalar_leaf(const State& s) { return leaf(s)[root_player_]; }

std::optional<DepthOutcome> DepthSearch::run(const State& root, int depth, std::uint64_t expansion_limit,
                                             const BudgetClock* clock) {
  if (depth < 0) fail(ErrorCode::invalid_config, "search depth must be >= 0");
  game_.current_player(root);
  root_player_ = options_.root_player >= 0 && algorithm_ == DepthAlgorithm::paranoid ? options_.root_player : root.mover;
  expansions_ = 0;
  limit_ = expansion_limit;
  clock_ = clock;
  cutoff_ = false;
  DepthOutcome out;
  try {
    switch (algorithm_) {
      case DepthAlgorithm::maxn:
      case DepthAlgorithm::kbest: {
        const auto r = maxn(root, depth);
        out.value = r.value;
        out.best = r.best;
        out.has_action = r.has_action;
        out.scalar = r.value[root.mover];
        break;
      }
      case DepthAlgorithm::paranoid:
        out.scalar = paranoid(root, depth, -kInf, kInf, &out.best);
        out.has_action = depth > 0;
        break;
      case DepthAlgorithm::brs:
        out.scalar = brs(root, depth, -kInf, kInf, 0, &out.best);
        out.has_action = depth > 0;
        break;
      case DepthAlgorithm::brs_plus:
        out.scalar = brs_max(root, depth, -kInf, kInf, &out.best);
        out.has_action = depth > 0;
        break;
    }
  } catch (const Aborted&) {
    return std::nullopt;
  }
  out.cutoff = cutoff_;
  out.expansions = expansions_;
  return out;
}

// ---------------------------------------------------------------------------
// max^n and k-best max^n

DepthSearch::VectorValue DepthSearch::maxn(const State& s, int depth) {
  if (game_.is_terminal(s)) return {game_.terminal_payoff(s), {}, false, false, true};
  if (depth == 0) {
    cutoff_ = true;
    return {evaluator_.evaluate(s), {}, false, true, false};
  }
  if (options_.table) {
    if (auto it = complete_.find(s.key); it != complete_.end() && it->second.second <= depth) return it->second.first;
    if (auto it = memo_.find(mix(s.key, depth, 0)); it != memo_.end()) {
      cutoff_ = cutoff_ || it->second.cut;
      return it->second;
    }
  }
  count_expansion();
  const auto actions = game_.legal_actions(s);
  const auto count = static_cast<int>(actions.size());
  std::vector<State> children;
  children.reserve(actions.size());
  for (Action a : actions) children.push_back(game_.apply_unchecked(s, a));

  std::vector<PayoffVector> values(actions.size());
  std::vector<char> searched(actions.size(), 1);
  VectorValue out;
  const bool ordering = algorithm_ == DepthAlgorithm::kbest && depth >= 2 && count > options_.k;
  if (depth == 1 || ordering) {
    // One batched call for every non-terminal child.
    std::vector<State> pending;
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (game_.is_terminal(children[i])) {
        values[i] = game_.terminal_payoff(children[i]);
      } else {
        pending.push_back(children[i]);
        slots.push_back(i);
      }
    }
    const auto evaluated = evaluator_.evaluate_batch(pending);
    for (std::size_t k = 0; k < slots.size(); ++k) values[slots[k]] = evaluated[k];
    if (depth == 1 && !pending.empty()) {
      cutoff_ = true;
      out.cut = true;
      out.complete = false;
    }
  }
  if (depth >= 2) {
    if (ordering) {
      std::vector<int> order(actions.size());
      for (int i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = i;
      const PlayerId p = s.mover;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)][p] > values[static_cast<std::size_t>(b)][p];
      });
      std::fill(searched.begin(), searched.end(), 0);
      for (int i = 0; i < options_.k; ++i) searched[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
      out.complete = false;
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (!searched[i]) continue;
      const auto r = maxn(children[i], depth - 1);
      values[i] = r.value;
      out.cut = out.cut || r.cut;
      out.complete = out.complete && r.complete;
    }
  }
  const PlayerId p = s.mover;
  const int best = lex_argmax(
      count, [&](int i) { return values[static_cast<std::size_t>(i)][p]; },
      [&](int i) { return searched[static_cast<std::size_t>(i)] != 0; });
  out.value = values[static_cast<std::size_t>(best)];
  out.best = actions[static_cast<std::size_t>(best)];
  out.has_action = true;
  if (options_.table && memo_.size() + complete_.size() < options_.table_capacity) {
    if (out.complete) complete_[s.key] = {out, depth};
    else memo_[mix(s.key, depth, 0)] = out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-beta table

std::optional<double> DepthSearch::probe(std::uint64_t key, int depth, double alpha, double beta) {
  if (!options_.table || !options_.pruning) return std::nullopt;
  auto it = bounds_.find(key);
  if (it == bounds_.end() || it->second.depth != depth) return std::nullopt;
  const auto& b = it->second;
  if (b.flag == kExact || (b.flag == kLower && b.value >= beta) || (b.flag == kUpper && b.value <= alpha)) {
    cutoff_ = cutoff_ || b.cut;
    return b.value;
  }
  return std::nullopt;
}

void DepthSearch::store(std::uint64_t key, int depth, double value, double alpha, double beta, bool cut) {
  if (!options_.table || !options_.pruning || bounds_.size() >= options_.table_capacity) return;
  const std::int8_t flag = value <= alpha ? kUpper : (value >= beta ? kLower : kExact);
  bounds_[key] = {value, flag, cut, depth};
}

// ---------------------------------------------------------------------------
// Paranoid

double DepthSearch::paranoid(const State& s, int depth, double alpha, double beta, Action* best) {
  if (game_.is_terminal(s) || depth == 0) return scalar_leaf(s);
  const auto key = mix(s.key, depth, 1);
  if (!best)
    if (auto hit = probe(key, depth, alpha, beta)) return *hit;
  count_expansion();
  const bool outer_cut = cutoff_;
  cutoff_ = false;
  const double alpha0 = alpha, beta0 = beta;
  const bool maximizing = s.mover == root_player_;
  double value = maximizing ? -kInf : kInf;
  for (Action a : game_.legal_actions(s)) {
    const double v = paranoid(game_.apply_unchecked(s, a), depth - 1, alpha, beta, nullptr);
    if (maximizing ? v > value : v < value) {
      value = v;
      if (best) *best = a;
    }
    if (!options_.pruning) continue;
    if (maximizing) alpha = std::max(alpha, value);
    else beta = std::min(beta, value);
    if (alpha >= beta) break;
  }
  store(key, depth, value, alpha0, beta0, cutoff_);
  cutoff_ = cutoff_ || outer_cut;
  return value;
}

// ---------------------------------------------------------------------------
// BRS: the root player's layer alternates with a single layer where the
// opponent with the most damaging move plays it, ignoring turn order.

double DepthSearch::brs(const State& s, int depth, double alpha, double beta, int layer, Action* best) {
  if (game_.is_terminal(s) || depth == 0) return scalar_leaf(s);
  const auto key = mix(s.key, depth, 2 + layer);
  if (!best)
    if (auto hit = probe(key, depth, alpha, beta)) return *hit;
  count_expansion();
  const bool outer_cut = cutoff_;
  cutoff_ = false;
  const double alpha0 = alpha, beta0 = beta;
  double value;
  if (layer == 0) {
    value = -kInf;
    // The real root move follows the rules; deeper layers place out of turn.
    const bool top = best != nullptr;
    const auto actions = top ? game_.legal_actions(s) : game_.legal_actions_for(s, root_player_);
    if (actions.empty()) {
      value = brs(s, depth - 1, alpha, beta, 1, nullptr);
    } else {
      for (Action a : actions) {
        const State child = top ? game_.apply_unchecked(s, a) : game_.apply_out_of_turn_unchecked(s, root_player_, a);
        const double v = brs(child, depth - 1, alpha, beta, 1, nullptr);
        if (v > value) {
          value = v;
          if (best) *best = a;
        }
        if (!options_.pruning) continue;
        alpha = std::max(alpha, value);
        if (alpha >= beta) break;
      }
    }
  } else {
    value = kInf;
    bool any = false;
    for (int i = 1; i < game_.num_players(); ++i) {
      const PlayerId q = (root_player_ + i) % game_.num_players();
      for (Action a : game_.legal_actions_for(s, q)) {
        any = true;
        const double v = brs(game_.apply_out_of_turn_unchecked(s, q, a), depth - 1, alpha, beta, 0, nullptr);
        value = std::min(value, v);
        if (!options_.pruning) continue;
        beta = std::min(beta, value);
        if (alpha >= beta) break;
      }
      if (options_.pruning && alpha >= beta) break;
    }
    if (!any) value = brs(s, depth - 1, alpha, beta, 0, nullptr);
  }
  store(key, depth, value, alpha0, beta0, cutoff_);
  cutoff_ = cutoff_ || outer_cut;
  return value;
}

// ---------------------------------------------------------------------------
// BRS+: between two root turns one opponent is searched over all its moves
// and every other opponent plays its greedy move, so states stay legal.

Action DepthSearch::greedy(const State& s) {
  if (auto it = greedy_.find(s.key); it != greedy_.end()) return it->second;
  const auto actions = game_.legal_actions(s);
  std::vector<PayoffVector> values(actions.size());
  std::vector<State> pending;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    State child = game_.apply_unchecked(s, actions[i]);
    if (game_.is_terminal(child)) {
      values[i] = game_.terminal_payoff(child);
    } else {
      pending.push_back(std::move(child));
      slots.push_back(i);
    }
  }
  const auto evaluated = evaluator_.evaluate_batch(pending);
  for (std::size_t k = 0; k < slots.size(); ++k) values[slots[k]] = evaluated[k];
  const PlayerId p = s.mover;
  const Action a = actions[static_cast<std::size_t>(
      lex_argmax(static_cast<int>(actions.size()), [&](int i) { return values[static_cast<std::size_t>(i)][p]; }))];
  if (greedy_.size() < options_.table_capacity) greedy_.emplace(s.key, a);
  return a;
}

State DepthSearch::greedy_walk(State s, PlayerId stop_a, PlayerId stop_b, int& plies) {
  while (!game_.is_terminal(s) && s.mover != stop_a && s.mover != stop_b && plies < phase_cap_) {
    s = game_.apply_unchecked(s, greedy(s));
    ++plies;
  }
  return s;
}

double DepthSearch::brs_max(const State& s, int depth, double alpha, double beta, Action* best) {
  if (game_.is_terminal(s) || depth == 0) return scalar_leaf(s);
  const auto key = mix(s.key, depth, 4);
  if (!best)
    if (auto hit = probe(key, depth, alpha, beta)) return *hit;
  count_expansion();
  const bool outer_cut = cutoff_;
  cutoff_ = false;
  const double alpha0 = alpha, beta0 = beta;
  double value = -kInf;
  for (Action a : game_.legal_actions(s)) {
    const double v = brs_opponents(game_.apply_unchecked(s, a), depth - 1, alpha, beta);
    if (v > value) {
      value = v;
      if (best) *best = a;
    }
    if (!options_.pruning) continue;
    alpha = std::max(alpha, value);
    if (alpha >= beta) break;
  }
  store(key, depth, value, alpha0, beta0, cutoff_);
  cutoff_ = cutoff_ || outer_cut;
  return value;
}

double DepthSearch::brs_after_phase(const State& s, int depth, double alpha, double beta) {
  if (game_.is_terminal(s) || s.mover != root_player_) return scalar_leaf(s);
  return brs_max(s, depth - 1, alpha, beta, nullptr);
}

double DepthSearch::brs_opponents(const State& s, int depth, double alpha, double beta) {
  if (game_.is_terminal(s) || depth == 0) return scalar_leaf(s);
  if (s.mover == root_player_) return brs_max(s, depth - 1, alpha, beta, nullptr);
  const auto key = mix(s.key, depth, 5);
  if (auto hit = probe(key, depth, alpha, beta)) return *hit;
  count_expansion();
  const bool outer_cut = cutoff_;
  cutoff_ = false;
  const double alpha0 = alpha, beta0 = beta;
  double value = kInf;
  for (int i = 1; i < game_.num_players(); ++i) {
    const PlayerId q = (root_player_ + i) % game_.num_players();
    value = std::min(value, brs_phase(s, q, depth, alpha, beta));
    if (!options_.pruning) continue;
    beta = std::min(beta, value);
    if (alpha >= beta) break;
  }
  store(key, depth, value, alpha0, beta0, cutoff_);
  cutoff_ = cutoff_ || outer_cut;
  return value;
}

double DepthSearch::brs_phase(State s, PlayerId searched, int depth, double alpha, double beta) {
  int plies = 0;
  s = greedy_walk(std::move(s), root_player_, searched, plies);
  if (game_.is_terminal(s) || s.mover != searched) return brs_after_phase(s, depth, alpha, beta);
  double value = kInf;
  for (Action a : game_.legal_actions(s)) {
    int after = plies + 1;
    const State end = greedy_walk(game_.apply_unchecked(s, a), root_player_, root_player_, after);
    value = std::min(value, brs_after_phase(end, depth, alpha, beta));
    if (!options_.pruning) continue;
    beta = std::min(beta, value);
    if (alpha >= beta) break;
  }
  return value;
}

// ---------------------------------------------------------------------------

namespace {

DepthOutcome run_once(const Game& game, const eval::Evaluator& evaluator, DepthAlgorithm algorithm, DepthOptions options,
                      const State& s, int depth) {
  DepthSearch search(game, evaluator, algorithm, options);
  return *search.run(s, depth);
}

}  // namespace

DepthOutcome maxn_depth(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth) {
  return run_once(game, evaluator, DepthAlgorithm::maxn, {}, s, depth);
}

DepthOutcome kbest_maxn(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth, int k) {
  DepthOptions options;
  options.k = k;
  return run_once(game, evaluator, DepthAlgorithm::kbest, options, s, depth);
}

DepthOutcome paranoid(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth, PlayerId root_player) {
  DepthOptions options;
  options.root_player = root_player;
  return run_once(game, evaluator, DepthAlgorithm::paranoid, options, s, depth);
}

DepthOutcome brs(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth) {
  return run_once(game, evaluator, DepthAlgorithm::brs, {}, s, depth);
}

DepthOutcome brs_plus(const Game& game, const eval::Evaluator& evaluator, const State& s, int depth) {
  return run_once(game, evaluator, DepthAlgorithm::brs_plus, {}, s, depth);
}

SearchResult iterative_deepening(DepthSearch& search, const State& root, const Budget& budget, int max_depth) {
  validate(budget);
  BudgetClock clock(budget);
  search.clear();
  SearchResult out;
  std::uint64_t used = 0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::optional<DepthOutcome> r;
    if (depth == 1) {
      r = search.run(root, 1);
    } else {
      if (clock.exhausted(used)) break;
      const std::uint64_t left = budget.mode == Budget::Mode::nodes ? budget.nodes - used : std::numeric_limits<std::uint64_t>::max();
      r = search.run(root, depth, left, budget.mode == Budget::Mode::time ? &clock : nullptr);
      if (!r) break;
    }
    used += r->expansions;
    out.chosen = r->best;
    out.value = r->value;
    out.scalar = r->scalar;
    out.depth = depth;
    if (!r->cutoff) {
      out.resolved_root = true;
      break;
    }
  }
  out.expansions = used;
  out.seconds = clock.elapsed();
  return out;
}

}  // namespace mps::search

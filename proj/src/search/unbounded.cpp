#include "search/unbounded.hpp"

#include <ostream>
#include <tuple>

#include "core/tiebreak.hpp"

namespace mps::search {
namespace {

bool solved_loss(const Entry& e, PlayerId p) { return e.r && e.c[p] == -1.0; }

}  // namespace

int best_action(const std::vector<Entry>& entries, PlayerId p) {
  return lex_argmax(static_cast<int>(entries.size()), [&](int i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    return std::tuple<bool, double, double>{!solved_loss(e, p), e.c[p], e.v[p]};
  });
}

int safe_action(const std::vector<Entry>& entries, PlayerId p) {
  return lex_argmax(static_cast<int>(entries.size()), [&](int i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    return std::tuple<bool, double, std::uint64_t, double>{!solved_loss(e, p), e.c[p], e.n, e.v[p]};
  });
}

UnboundedMaxn::UnboundedMaxn(const Game& game, const eval::Evaluator& evaluator, std::size_t capacity)
    : game_(game), evaluator_(evaluator), capacity_(capacity) {
  if (&evaluator.game() != &game && evaluator.game().name() != game.name())
    fail(ErrorCode::invalid_config, "evaluator " + evaluator.id() + " does not belong to " + game.name());
  if (capacity_ == 0) fail(ErrorCode::invalid_config, "table capacity must be positive");
}

void UnboundedMaxn::reset(const State& root) {
  game_.current_player(root);  // rejects terminal roots
  table_.clear();
  root_ = root;
  expansions_ = 0;
  iterations_ = 0;
  full_ = false;
}

const Node* UnboundedMaxn::find(ZobristKey key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

bool UnboundedMaxn::root_resolved() const {
  const Node* root = find(root_.key);
  if (!root) return false;
  for (const auto& e : root->entries)
    if (!e.r) return false;
  return true;
}

void UnboundedMaxn::expand(const State& s) {
  Node node;
  node.mover = s.mover;
  const auto actions = game_.legal_actions(s);
  node.entries.resize(actions.size());
  std::vector<State> pending;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto& e = node.entries[i];
    e.action = actions[i];
    State child = game_.apply_unchecked(s, actions[i]);
    if (game_.is_terminal(child)) {
      e.v = game_.terminal_payoff(child);
      e.c = game_.win_loss_vector(child);
      e.r = true;
    } else {
      e.c = PayoffVector(game_.num_players());
      pending.push_back(std::move(child));
      slots.push_back(i);
    }
  }
  if (!pending.empty()) {
    const auto values = evaluator_.evaluate_batch(pending);
    for (std::size_t k = 0; k < slots.size(); ++k) node.entries[slots[k]].v = values[k];
  }
  table_.emplace(s.key, std::move(node));
  ++expansions_;
}

void UnboundedMaxn::backup(const std::vector<Step>& path, const State& leaf) {
  const State* child = &leaf;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    auto& entry = table_.at(it->state.key).entries[static_cast<std::size_t>(it->index)];
    ++entry.n;
    const Node& below = table_.at(child->key);
    if (!entry.r) {
      const PlayerId q = below.mover;
      const int best = lex_argmax(static_cast<int>(below.entries.size()),
                                  [&](int i) { return completion_key(below.entries[static_cast<std::size_t>(i)], q); });
      const auto& chosen = below.entries[static_cast<std::size_t>(best)];
      entry.v = chosen.v;
      entry.c = chosen.c;
      bool all_resolved = true;
      for (const auto& e : below.entries) all_resolved = all_resolved && e.r;
      entry.r = (chosen.r && chosen.c[q] == 1.0) || all_resolved;
    }
    child = &it->state;
  }
}

bool UnboundedMaxn::step() {
  if (full_ || root_resolved()) return false;
  std::vector<Step> path;
  State s = root_;
  std::uint64_t expanded_key = 0;
  while (true) {
    auto it = table_.find(s.key);
    if (it == table_.end()) {
      if (table_.size() >= capacity_) {
        full_ = true;
        return false;
      }
      expand(s);
      expanded_key = s.key;
      break;
    }
    const Node& node = it->second;
    const PlayerId p = node.mover;
    const int index = lex_argmax(
        static_cast<int>(node.entries.size()),
        [&](int i) { return completion_key(node.entries[static_cast<std::size_t>(i)], p); },
        [&](int i) { return !node.entries[static_cast<std::size_t>(i)].r; });
    if (index < 0) break;  // every action resolved, reached through a transposition
    State next = game_.apply_unchecked(s, node.entries[static_cast<std::size_t>(index)].action);
    path.push_back({std::move(s), index});
    s = std::move(next);
  }
  backup(path, s);
  ++iterations_;
  if (trace_) {
    *trace_ << "iter " << iterations_ << " path " << path.size() << " expanded " << std::hex << expanded_key << std::dec;
    if (!path.empty()) {
      const auto& e = table_.at(root_.key).entries[static_cast<std::size_t>(path.front().index)];
      *trace_ << " root[" << path.front().index << "] n=" << e.n << " c=" << to_string(e.c) << " v=" << to_string(e.v)
              << " r=" << e.r;
    }
    *trace_ << '\n';
  }
  return true;
}

SearchResult UnboundedMaxn::result(Decision decision) const {
  const Node* root = find(root_.key);
  if (!root) fail(ErrorCode::contract_violation, "unbounded max^n: root has not been expanded");
  SearchResult out;
  for (const auto& e : root->entries) out.root_entries.push_back({e.action, e.c, e.v, e.n, e.r});
  const int index = decision == Decision::best ? best_action(root->entries, root->mover) : safe_action(root->entries, root->mover);
  out.chosen = root->entries[static_cast<std::size_t>(index)].action;
  out.value = root->entries[static_cast<std::size_t>(index)].v;
  out.expansions = expansions_;
  out.iterations = iterations_;
  out.resolved_root = root_resolved();
  return out;
}

SearchResult UnboundedMaxn::search(const State& root, const Budget& budget, Decision decision) {
  validate(budget);
  reset(root);
  BudgetClock clock(budget);
  do {
    if (!step()) break;
  } while (!clock.exhausted(expansions_));
  auto out = result(decision);
  out.seconds = clock.elapsed();
  return out;
}

}  // namespace mps::search

#include "search/mcts.hpp"

#include <cmath>

#include "core/tiebreak.hpp"

namespace mps::search {

Mcts::Mcts(const Game& game, double c, std::uint64_t seed, const eval::Evaluator* evaluator)
    : game_(game), c_(c), rng_(seed), evaluator_(evaluator) {
  if (!(c >= 0) || !std::isfinite(c)) fail(ErrorCode::invalid_config, "MCTS exploration constant must be finite and >= 0");
}

int Mcts::add_node(State s) {
  TreeNode node;
  if (!game_.is_terminal(s)) {
    node.actions = game_.legal_actions(s);
    node.children.assign(node.actions.size(), -1);
  }
  node.reward = PayoffVector(game_.num_players());
  node.state = std::move(s);
  tree_.push_back(std::move(node));
  return static_cast<int>(tree_.size()) - 1;
}

PayoffVector Mcts::terminal_reward(const State& s) const {
  auto v = game_.win_loss_vector(s);
  for (auto& x : v) x = (x + 1) / 2;
  return v;
}

PayoffVector Mcts::simulate(const State& start) {
  if (game_.is_terminal(start)) return terminal_reward(start);
  if (evaluator_) {
    const auto v = evaluator_->evaluate(start);
    for (double x : v)
      if (!(x >= 0.0 && x <= 1.0))
        fail(ErrorCode::contract_violation, "MCTS_h evaluator " + evaluator_->id() + " returned " + to_string(v) +
                                                " outside [0, 1] on state " + game_.to_text(start));
    return v;
  }
  State s = start;
  while (!game_.is_terminal(s)) {
    const auto actions = game_.legal_actions(s);
    s = game_.apply_unchecked(s, actions[rng_() % actions.size()]);
  }
  return terminal_reward(s);
}

SearchResult Mcts::search(const State& root, const Budget& budget) {
  validate(budget);
  game_.current_player(root);
  BudgetClock clock(budget);
  tree_.clear();
  add_node(root);
  std::uint64_t iterations = 0;
  std::vector<int> path;
  do {
    path.assign(1, 0);
    int current = 0;
    // Selection: descend while every child has been expanded.
    while (!tree_[static_cast<std::size_t>(current)].actions.empty() &&
           tree_[static_cast<std::size_t>(current)].expanded == static_cast<int>(tree_[static_cast<std::size_t>(current)].actions.size())) {
      const auto& node = tree_[static_cast<std::size_t>(current)];
      const PlayerId p = node.state.mover;
      const double log_n = std::log(static_cast<double>(node.visits));
      const int pick = lex_argmax(static_cast<int>(node.children.size()), [&](int i) {
        const auto& child = tree_[static_cast<std::size_t>(node.children[static_cast<std::size_t>(i)])];
        const double n = static_cast<double>(child.visits);
        return child.reward[p] / n + c_ * std::sqrt(log_n / n);
      });
      current = node.children[static_cast<std::size_t>(pick)];
      path.push_back(current);
    }
    // Expansion: the next unexpanded child in ordinal order.
    if (!tree_[static_cast<std::size_t>(current)].actions.empty()) {
      auto& node = tree_[static_cast<std::size_t>(current)];
      const int slot = node.expanded++;
      State child = game_.apply_unchecked(node.state, node.actions[static_cast<std::size_t>(slot)]);
      const int id = add_node(std::move(child));
      tree_[static_cast<std::size_t>(current)].children[static_cast<std::size_t>(slot)] = id;
      current = id;
      path.push_back(current);
    }
    const auto reward = simulate(tree_[static_cast<std::size_t>(current)].state);
    for (int id : path) {
      auto& node = tree_[static_cast<std::size_t>(id)];
      ++node.visits;
      for (PlayerId p = 0; p < reward.size(); ++p) node.reward[p] += reward[p];
    }
    ++iterations;
  } while (!clock.exhausted(iterations));

  const auto& top = tree_[0];
  SearchResult out;
  const int best = lex_argmax(static_cast<int>(top.children.size()), [&](int i) {
    const int id = top.children[static_cast<std::size_t>(i)];
    return id < 0 ? std::uint64_t{0} : tree_[static_cast<std::size_t>(id)].visits;
  });
  for (std::size_t i = 0; i < top.actions.size(); ++i) {
    RootEntry e;
    e.action = top.actions[i];
    const int id = top.children[i];
    e.v = PayoffVector(game_.num_players());
    if (id >= 0) {
      const auto& child = tree_[static_cast<std::size_t>(id)];
      e.n = child.visits;
      for (PlayerId p = 0; p < e.v.size(); ++p) e.v[p] = child.reward[p] / static_cast<double>(child.visits);
    }
    e.c = PayoffVector(game_.num_players());
    out.root_entries.push_back(e);
  }
  out.chosen = top.actions[static_cast<std::size_t>(best)];
  out.value = out.root_entries[static_cast<std::size_t>(best)].v;
  out.iterations = iterations;
  out.expansions = tree_.size() - 1;
  out.seconds = clock.elapsed();
  return out;
}

}  // namespace mps::search

#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/game.hpp"
#include "games/registry.hpp"

namespace mps::test {

struct DeskGame {
  std::string name;
  nlohmann::json config;
};

// Small instances of every shipped game.
inline const std::vector<DeskGame>& desk_games() {
  static const std::vector<DeskGame> games{
      {"three_player_hex", {{"side", 3}}},
      {"threehex", {{"side", 3}}},
      {"separed_teamhex", {{"N", 4}}},
      {"quadamazons", {{"N", 6}, {"d", 1}}},
      {"quadrothello", {{"N", 6}}},
      {"triinversion", {{"l", 3}}},
      {"hey_fish", nlohmann::json::object()},
      {"trinim", nlohmann::json::object()},
      {"bandit", nlohmann::json::object()},
  };
  return games;
}

inline GamePtr desk(const std::string& name) {
  for (const auto& g : desk_games())
    if (g.name == name) return games::make_game(g.name, g.config);
  return games::make_game(name);
}

inline Action random_action(const Game& game, const State& s, std::mt19937_64& rng) {
  const auto actions = game.legal_actions(s);
  return actions[std::uniform_int_distribution<std::size_t>(0, actions.size() - 1)(rng)];
}

// Up to `plies` random moves from the initial state, never stepping onto a
// terminal state.
inline State random_position(const Game& game, std::mt19937_64& rng, int plies) {
  State s = game.initial_state();
  for (int i = 0; i < plies; ++i) {
    State next = game.apply(s, random_action(game, s, rng));
    if (game.is_terminal(next)) break;
    s = std::move(next);
  }
  return s;
}

inline State random_terminal(const Game& game, std::mt19937_64& rng, State s) {
  while (!game.is_terminal(s)) s = game.apply(s, random_action(game, s, rng));
  return s;
}

// Plies of the longest line from `s`.
inline int tree_height(const Game& game, const State& s, std::unordered_map<ZobristKey, int>& memo) {
  if (game.is_terminal(s)) return 0;
  if (auto it = memo.find(s.key); it != memo.end()) return it->second;
  int h = 0;
  for (Action a : game.legal_actions(s)) h = std::max(h, 1 + tree_height(game, game.apply(s, a), memo));
  memo[s.key] = h;
  return h;
}

inline int tree_height(const Game& game, const State& s) {
  std::unordered_map<ZobristKey, int> memo;
  return tree_height(game, s, memo);
}

}  // namespace mps::test

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/payoff.hpp"

namespace mps {

using ZobristKey = std::uint64_t;

// A move in game-specific integer encoding. Legal-action lists are sorted by
// code, so comparing codes is the canonical ordinal order used for every
// tie-break in search and in the oracle.
struct Action {
  std::int32_t code = 0;
  friend auto operator<=>(const Action&, const Action&) = default;
};

inline constexpr Action kPass{-1};

// Immutable-by-convention position. `cells` is the row-major board, `extra`
// holds counters, scores and phase markers. `terminal` and `key` are derived
// and kept in sync by Game.
struct State {
  std::vector<std::int8_t> cells;
  std::vector<std::int32_t> extra;
  int mover = 0;
  bool terminal = false;
  ZobristKey key = 0;

  friend bool operator==(const State& a, const State& b) {
    return a.mover == b.mover && a.cells == b.cells && a.extra == b.extra;
  }
};

ZobristKey hash_state(const State& s);

// Rule engine contract shared by every game and every search algorithm.
// Public entry points validate their preconditions and throw mps::Error;
// the protected hooks are what each game implements.
class Game {
 public:
  explicit Game(int players) : players_(players) {}
  virtual ~Game() = default;
  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;

  virtual std::string name() const = 0;
  virtual nlohmann::json config() const = 0;
  int num_players() const noexcept { return players_; }

  State initial_state() const;
  std::vector<Action> legal_actions(const State& s) const;
  State apply(const State& s, Action a) const;
  // No legality check; for search internals that only replay generated moves.
  State apply_unchecked(const State& s, Action a) const;
  PlayerId current_player(const State& s) const;
  bool is_terminal(const State& s) const noexcept { return s.terminal; }
  PayoffVector terminal_payoff(const State& s) const;
  PayoffVector win_loss_vector(const State& s) const;
  ZobristKey zobrist_key(const State& s) const noexcept { return s.key; }

  // Best-reply search support: moves for `player` ignoring turn order. The
  // successor keeps the original mover.
  virtual bool supports_out_of_turn() const { return false; }
  std::vector<Action> legal_actions_for(const State& s, PlayerId player) const;
  State apply_out_of_turn(const State& s, PlayerId player, Action a) const;
  // No legality check; for actions taken from legal_actions_for.
  State apply_out_of_turn_unchecked(const State& s, PlayerId player, Action a) const;

  // Strictly increases along every move; witnesses acyclicity.
  virtual std::uint64_t progress(const State& s) const = 0;

  // "cells:<chars>;mover:<p>;extra:<i,j,...>" with cell value 0 as '.', and
  // values 1..35 as base-36 digits.
  std::string to_text(const State& s) const;
  State parse_text(std::string_view text) const;
  virtual std::string action_to_string(Action a) const;
  virtual Action parse_action(std::string_view text) const;

 protected:
  virtual State make_initial() const = 0;
  virtual void generate(const State& s, std::vector<Action>& out) const = 0;
  // Mutates in place; must update mover and terminal.
  virtual void play(State& s, Action a) const = 0;
  virtual PayoffVector score(const State& s) const = 0;
  virtual PayoffVector outcome(const State& s) const { return win_loss_from_scores(score(s)); }
  // Empty when legal, otherwise names the violated rule.
  virtual std::string illegal_reason(const State& s, Action a) const;
  virtual void generate_for(const State& s, PlayerId player, std::vector<Action>& out) const;
  virtual void play_for(State& s, PlayerId player, Action a) const;
  virtual std::string illegal_reason_for(const State& s, PlayerId player, Action a) const;
  // Recomputes derived fields (terminal, mover skips) after parsing; throws
  // parse_error on malformed content.
  virtual void normalize_parsed(State& s) const = 0;

  void seal(State& s) const { s.key = hash_state(s); }
  void require_non_terminal(const State& s, const char* op) const;

 private:
  int players_;
};

using GamePtr = std::shared_ptr<const Game>;

// Canonical ordinal of `a` in `actions` (sorted), or -1.
int ordinal_of(const std::vector<Action>& actions, Action a);

}  // namespace mps

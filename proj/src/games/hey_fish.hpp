#pragma once

#include <cstdint>

#include "core/game.hpp"

namespace mps::games {

struct HeyFishConfig {
  int rows = 5;
  int cols = 5;
  int players = 3;
  int penguins = 2;
  std::uint64_t seed = 1;
  // Optional explicit fish counts, row-major; empty means seeded shuffle.
  std::vector<int> fish;
};

// Hey That's My Fish! on an odd-r offset hexagonal grid. A penguin slides in
// a straight line over intact, unoccupied tiles; the tile it leaves is
// removed and its fish go to the mover. A penguin that can no longer move is
// lifted off the board together with its tile (fish collected). Players
// without penguins are skipped; the game ends when no penguin remains.
// Cells: fish on the tile, 0 for a gap.
// extra: [score of each player][cell of each penguin, player-major, -1 gone].
class HeyFish final : public Game {
 public:
  explicit HeyFish(const HeyFishConfig& config);

  std::string name() const override { return "hey_fish"; }
  nlohmann::json config() const override;
  std::uint64_t progress(const State& s) const override;
  std::string action_to_string(Action a) const override;

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int penguins_per_player() const { return penguins_; }
  // Neighbour of `cell` in direction d (0..5), -1 off board.
  int neighbor(int cell, int d) const;
  int score_of(const State& s, PlayerId p) const { return s.extra[static_cast<std::size_t>(p)]; }
  int penguin_cell(const State& s, PlayerId p, int k) const {
    return s.extra[static_cast<std::size_t>(num_players() + p * penguins_ + k)];
  }
  // Fish on tiles reachable in one slide by p's penguins, each tile counted once.
  int reachable_fish(const State& s, PlayerId p) const;

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  std::string illegal_reason(const State& s, Action a) const override;
  void normalize_parsed(State& s) const override;

 private:
  std::vector<bool> occupancy(const State& s) const;
  bool can_move(const State& s, const std::vector<bool>& occupied, int cell) const;
  void lift_stuck(State& s) const;
  void advance(State& s, PlayerId from) const;
  int rows_;
  int cols_;
  int penguins_;
  std::uint64_t seed_;
  std::vector<int> fish_;
};

}  // namespace mps::games

#pragma once

#include "core/game.hpp"
#include "games/hex_grid.hpp"

namespace mps::games {

// Three-player Hex on a hexagonal board, draw-on-blockage variant. Player p
// links the two edges of axis p. The game is drawn as soon as no player can
// still connect. Cells: 0 empty, 1 + p stone of p.
class ThreePlayerHex final : public Game {
 public:
  explicit ThreePlayerHex(int side);

  std::string name() const override { return "three_player_hex"; }
  nlohmann::json config() const override { return {{"side", grid_.side()}}; }
  bool supports_out_of_turn() const override { return true; }
  std::uint64_t progress(const State& s) const override;

  const HexHexGrid& grid() const { return grid_; }
  bool connected(const State& s, PlayerId p) const;
  bool can_still_connect(const State& s, PlayerId p) const;

  static constexpr int kOngoing = -1;
  static constexpr int kDraw = 3;

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  PayoffVector outcome(const State& s) const override { return score(s); }
  std::string illegal_reason(const State& s, Action a) const override;
  void generate_for(const State& s, PlayerId player, std::vector<Action>& out) const override;
  void play_for(State& s, PlayerId player, Action a) const override;
  std::string illegal_reason_for(const State& s, PlayerId player, Action a) const override;
  void normalize_parsed(State& s) const override;

 private:
  void place(State& s, PlayerId p, int cell) const;
  void settle(State& s, PlayerId last) const;
  HexHexGrid grid_;
};

// Hex for three on a hexagonal board where player q may also cover a single
// stone of player (q + 2) mod 3. Covered stones keep counting for their owner.
// Cells: 0 empty, 1 + p single stone, 4 + q stack topped by q over (q + 2) mod 3.
// extra: {outcome, consecutive passes}.
class Threehex final : public Game {
 public:
  explicit Threehex(int side);

  std::string name() const override { return "threehex"; }
  nlohmann::json config() const override { return {{"side", grid_.side()}}; }
  bool supports_out_of_turn() const override { return true; }
  std::uint64_t progress(const State& s) const override;

  const HexHexGrid& grid() const { return grid_; }
  bool connected(const State& s, PlayerId p) const;
  static bool holds(std::int8_t cell, PlayerId p);
  static bool placeable(std::int8_t cell, PlayerId q);

  static constexpr int kOngoing = -1;
  static constexpr int kDraw = 3;

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  PayoffVector outcome(const State& s) const override { return score(s); }
  std::string illegal_reason(const State& s, Action a) const override;
  void generate_for(const State& s, PlayerId player, std::vector<Action>& out) const override;
  void play_for(State& s, PlayerId player, Action a) const override;
  std::string illegal_reason_for(const State& s, PlayerId player, Action a) const override;
  void normalize_parsed(State& s) const override;

 private:
  void place(State& s, PlayerId q, int cell) const;
  HexHexGrid grid_;
};

// Four-player team Hex on an N x N rhombus split into quadrants A (top-left),
// B (top-right), C (bottom-right) and D (bottom-left). Each zone hosts a local
// two-player Hex game:
//   player 0 plays A and B and links the upper halves of the left and right edges,
//   player 2 plays C and D and links the lower halves of the left and right edges,
//   player 1 plays B and C and links the right halves of the top and bottom edges,
//   player 3 plays A and D and links the left halves of the top and bottom edges.
// Team {0, 2} links left to right, team {1, 3} links top to bottom, with allied
// stones connecting. extra: {cycle step 0..7, outcome}.
class SeparedTeamhex final : public Game {
 public:
  explicit SeparedTeamhex(int n);

  std::string name() const override { return "separed_teamhex"; }
  nlohmann::json config() const override { return {{"N", grid_.n()}}; }
  bool supports_out_of_turn() const override { return true; }
  std::uint64_t progress(const State& s) const override;

  int n() const { return grid_.n(); }
  const RhombusGrid& grid() const { return grid_; }
  // 0..3 for A..D.
  int zone_of(int cell) const;
  bool player_in_zone(PlayerId p, int zone) const;
  bool strong_connection(const State& s, PlayerId p) const;
  bool team_connection(const State& s, int team) const;
  static int team_of(PlayerId p) { return p % 2; }
  // Goal segments: end 0 or 1 of player p, or of team t.
  const std::vector<bool>& player_edge(PlayerId p, int end) const { return player_edges_[static_cast<std::size_t>(2 * p + end)]; }
  const std::vector<bool>& team_edge(int t, int end) const { return team_edges_[static_cast<std::size_t>(2 * t + end)]; }

  // Turn cycle as (player, zone) pairs.
  static constexpr std::array<std::array<int, 2>, 8> kCycle{{{0, 0}, {3, 0}, {1, 1}, {0, 1}, {2, 2}, {1, 2}, {3, 3}, {2, 3}}};
  static constexpr int kOngoing = -1;
  static constexpr int kTeamWin = 4;  // kTeamWin + team

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  std::string illegal_reason(const State& s, Action a) const override;
  void generate_for(const State& s, PlayerId player, std::vector<Action>& out) const override;
  void play_for(State& s, PlayerId player, Action a) const override;
  std::string illegal_reason_for(const State& s, PlayerId player, Action a) const override;
  void normalize_parsed(State& s) const override;

 private:
  void place(State& s, PlayerId p, int cell) const;
  void advance(State& s) const;
  bool zone_has_room(const State& s, int zone) const;
  RhombusGrid grid_;
  std::array<std::vector<bool>, 8> player_edges_;  // [2p] and [2p + 1]
  std::array<std::vector<bool>, 4> team_edges_;    // [2t] and [2t + 1]
};

}  // namespace mps::games

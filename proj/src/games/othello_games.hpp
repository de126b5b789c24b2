#pragma once

#include "core/game.hpp"
#include "games/hex_grid.hpp"

namespace mps::games {

// Four-player Othello on an N x N board. Player 0 places in the top half,
// 1 in the right half, 2 in the bottom half, 3 in the left half; captures
// cross zones freely. A player without a move is skipped; the game ends when
// nobody can move. Cells: 0 empty, 1 + p.
class Quadrothello final : public Game {
 public:
  explicit Quadrothello(int n);

  std::string name() const override { return "quadrothello"; }
  nlohmann::json config() const override { return {{"N", n_}}; }
  bool supports_out_of_turn() const override { return true; }
  std::uint64_t progress(const State& s) const override;

  int n() const { return n_; }
  bool in_zone(PlayerId p, int cell) const;
  bool has_move(const State& s, PlayerId p) const;
  int stones(const State& s, PlayerId p) const;

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
  // Number of stones `p` would capture at `cell` (0 when illegal). With `out`
  // set, flips them there; otherwise returns as soon as the move is known legal.
  int capture(const State& s, PlayerId p, int cell, State* out) const;
  int n_;
};

// Three-player Othello variant on a hexagonal board of side l. The centre is
// never playable; the two cells on either side of it count as adjacent. A
// move must enclose a line of the mover's direct opponent between the new
// stone and a stone of the mover or of its indirect opponent. extra: {passes}.
class Triinversion final : public Game {
 public:
  explicit Triinversion(int side);

  std::string name() const override { return "triinversion"; }
  nlohmann::json config() const override { return {{"l", grid_.side()}}; }
  bool supports_out_of_turn() const override { return true; }
  std::uint64_t progress(const State& s) const override;

  const HexHexGrid& grid() const { return grid_; }
  static PlayerId direct_opponent(PlayerId p) { return (p + 2) % 3; }
  static PlayerId indirect_opponent(PlayerId p) { return (p + 1) % 3; }
  // Next cell along direction d, jumping over the centre; -1 off board.
  int step(int cell, int d) const;
  bool has_move(const State& s, PlayerId p) const;
  int pieces(const State& s, PlayerId p) const;

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
  int capture(const State& s, PlayerId p, int cell, State* out) const;
  void refresh_terminal(State& s) const;
  HexHexGrid grid_;
};

}  // namespace mps::games

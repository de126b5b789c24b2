#pragma once

#include "core/game.hpp"

namespace mps::games {

// Four-player Amazons on an N x N board with interaction distance d.
// Player 0 owns the top band of N/2 + d rows, 1 the right band, 2 the bottom
// band, 3 the left band; each band splits into two sub-zones along the
// perpendicular midline. A turn is two steps of (move amazon, shoot arrow),
// and the second amazon must end in the other sub-zone. Each phase is one
// ply. Cells: 0 empty, 1 arrow, 2 + p amazon.
class Quadamazons final : public Game {
 public:
  Quadamazons(int n, int d);

  std::string name() const override { return "quadamazons"; }
  nlohmann::json config() const override { return {{"N", n_}, {"d", d_}}; }
  std::uint64_t progress(const State& s) const override;
  std::string action_to_string(Action a) const override;

  int n() const { return n_; }
  int d() const { return d_; }
  bool in_zone(PlayerId p, int cell) const;
  int sub_zone(PlayerId p, int cell) const;
  bool eliminated(const State& s, PlayerId p) const;
  // Amazon moves available to p at the first phase of a first step.
  int mobility(const State& s, PlayerId p) const;

  // extra layout
  enum Slot : int {
    kStep = 0,        // 0 or 1
    kPhase,           // 0 move, 1 arrow
    kMovedTo,         // amazon destination during the arrow phase
    kMovedFrom,       // vacated square during the arrow phase
    kFirstSubZone,    // sub-zone reached at step 0, -1 before
    kEliminated,      // number of eliminated players
    kOrder,           // kOrder + i: i-th eliminated player, -1 unused
    kStatus = kOrder + 4,  // -1 ongoing, 0 all eliminated, 1 single survivor
    kSurvivorMoves,
    kSlots,
  };

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  std::string illegal_reason(const State& s, Action a) const override;
  void normalize_parsed(State& s) const override;

 private:
  void amazon_moves(const State& s, PlayerId p, int required_sub_zone, std::vector<Action>* out, int* count) const;
  void arrow_moves(const State& s, PlayerId p, std::vector<Action>& out) const;
  void begin_turn(State& s, PlayerId first) const;
  void eliminate(State& s, PlayerId p) const;
  int alive(const State& s) const;
  int n_;
  int d_;
};

}  // namespace mps::games

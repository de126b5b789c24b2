#pragma once

#include "core/game.hpp"

namespace mps::games {

// P-player subtraction race: take 1 or 2 tokens from one heap; whoever takes
// the last token wins, everyone else loses. Cells: heap sizes.
// extra: {last mover}. Action code: heap * 2 + (take - 1).
class TriNim final : public Game {
 public:
  TriNim(std::vector<int> heaps, int players);

  std::string name() const override { return "trinim"; }
  nlohmann::json config() const override { return {{"heaps", heaps_}, {"players", num_players()}}; }
  std::uint64_t progress(const State& s) const override;
  std::string action_to_string(Action a) const override;

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  void normalize_parsed(State& s) const override;

 private:
  std::vector<int> heaps_;
};

// One-ply game: player 0 picks an arm and the game ends with that arm's row
// of the payoff table as the score vector. Cells: {chosen arm + 1}.
class Bandit final : public Game {
 public:
  explicit Bandit(std::vector<std::vector<double>> table);

  std::string name() const override { return "bandit"; }
  nlohmann::json config() const override { return {{"table", table_}}; }
  std::uint64_t progress(const State& s) const override { return s.cells[0] == 0 ? 0 : 1; }

  int arms() const { return static_cast<int>(table_.size()); }
  const std::vector<std::vector<double>>& table() const { return table_; }
  static std::vector<std::vector<double>> default_table();

 protected:
  State make_initial() const override;
  void generate(const State& s, std::vector<Action>& out) const override;
  void play(State& s, Action a) const override;
  PayoffVector score(const State& s) const override;
  void normalize_parsed(State& s) const override;

 private:
  std::vector<std::vector<double>> table_;
};

}  // namespace mps::games

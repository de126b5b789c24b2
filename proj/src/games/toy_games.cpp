#include "games/toy_games.hpp"

#include <algorithm>
#include <numeric>

namespace mps::games {

TriNim::TriNim(std::vector<int> heaps, int players) : Game(players), heaps_(std::move(heaps)) {
  if (players < 2 || players > kMaxPlayers) fail(ErrorCode::invalid_config, "trinim: players must be in [2, 4]");
  if (heaps_.empty()) fail(ErrorCode::invalid_config, "trinim: at least one heap");
  for (int h : heaps_)
    if (h < 0 || h > 35) fail(ErrorCode::invalid_config, "trinim: heap sizes must be in [0, 35]");
  if (std::accumulate(heaps_.begin(), heaps_.end(), 0) == 0) fail(ErrorCode::invalid_config, "trinim: no tokens");
}

State TriNim::make_initial() const {
  State s;
  for (int h : heaps_) s.cells.push_back(static_cast<std::int8_t>(h));
  s.extra = {-1};
  return s;
}

void TriNim::generate(const State& s, std::vector<Action>& out) const {
  for (std::size_t h = 0; h < s.cells.size(); ++h)
    for (int take = 1; take <= 2 && take <= s.cells[h]; ++take)
      out.push_back(Action{static_cast<std::int32_t>(h * 2 + static_cast<std::size_t>(take - 1))});
}

void TriNim::play(State& s, Action a) const {
  s.cells[static_cast<std::size_t>(a.code / 2)] -= static_cast<std::int8_t>(a.code % 2 + 1);
  s.extra[0] = s.mover;
  s.terminal = std::all_of(s.cells.begin(), s.cells.end(), [](std::int8_t h) { return h == 0; });
  s.mover = (s.mover + 1) % num_players();
}

PayoffVector TriNim::score(const State& s) const {
  PayoffVector v(num_players(), -1.0);
  v[s.extra[0]] = 1.0;
  return v;
}

std::uint64_t TriNim::progress(const State& s) const {
  std::uint64_t left = 0;
  for (auto h : s.cells) left += static_cast<std::uint64_t>(h);
  return 35 * s.cells.size() - left;
}

std::string TriNim::action_to_string(Action a) const {
  return "h" + std::to_string(a.code / 2) + "-" + std::to_string(a.code % 2 + 1);
}

void TriNim::normalize_parsed(State& s) const {
  for (auto h : s.cells)
    if (h < 0) fail(ErrorCode::parse_error, "trinim: negative heap");
  if (s.mover < 0 || s.mover >= num_players()) fail(ErrorCode::parse_error, "trinim: mover out of range");
  s.terminal = std::all_of(s.cells.begin(), s.cells.end(), [](std::int8_t h) { return h == 0; });
  if (s.terminal && (s.extra[0] < 0 || s.extra[0] >= num_players()))
    fail(ErrorCode::parse_error, "trinim: finished game needs a last mover");
}

Bandit::Bandit(std::vector<std::vector<double>> table) : Game(table.empty() ? 0 : static_cast<int>(table[0].size())), table_(std::move(table)) {
  if (table_.empty()) fail(ErrorCode::invalid_config, "bandit: empty payoff table");
  if (num_players() < 2 || num_players() > kMaxPlayers) fail(ErrorCode::invalid_config, "bandit: rows must have 2..4 entries");
  if (table_.size() > 34) fail(ErrorCode::invalid_config, "bandit: at most 34 arms");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != num_players()) fail(ErrorCode::invalid_config, "bandit: ragged payoff table");
}

std::vector<std::vector<double>> Bandit::default_table() {
  return {{0.2, 0.5, 0.3}, {0.6, 0.1, 0.3}, {0.35, 0.45, 0.2}, {0.3, 0.3, 0.4}};
}

State Bandit::make_initial() const {
  State s;
  s.cells = {0};
  return s;
}

void Bandit::generate(const State&, std::vector<Action>& out) const {
  for (int a = 0; a < arms(); ++a) out.push_back(Action{a});
}

void Bandit::play(State& s, Action a) const {
  s.cells[0] = static_cast<std::int8_t>(a.code + 1);
  s.terminal = true;
}

PayoffVector Bandit::score(const State& s) const {
  const auto& row = table_[static_cast<std::size_t>(s.cells[0] - 1)];
  PayoffVector v(num_players());
  for (PlayerId p = 0; p < num_players(); ++p) v[p] = row[static_cast<std::size_t>(p)];
  return v;
}

void Bandit::normalize_parsed(State& s) const {
  if (s.cells[0] < 0 || s.cells[0] > arms()) fail(ErrorCode::parse_error, "bandit: arm out of range");
  if (s.mover != 0) fail(ErrorCode::parse_error, "bandit: only player 0 moves");
  s.terminal = s.cells[0] != 0;
}

}  // namespace mps::games

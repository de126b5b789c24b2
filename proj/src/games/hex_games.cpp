#include "games/hex_games.hpp"

#include <algorithm>

namespace mps::games {
namespace {

int action_cell(Action a) { return a.code; }

PayoffVector single_winner(int players, PlayerId winner, double win, double lose) {
  PayoffVector v(players, lose);
  v[winner] = win;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// ThreePlayerHex

ThreePlayerHex::ThreePlayerHex(int side) : Game(3), grid_(side) {
  if (side < 2) fail(ErrorCode::invalid_config, "three_player_hex: side must be >= 2");
}

State ThreePlayerHex::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(grid_.cell_count()), 0);
  s.extra = {kOngoing};
  return s;
}

bool ThreePlayerHex::connected(const State& s, PlayerId p) const {
  const auto own = static_cast<std::int8_t>(1 + p);
  return grid_.graph().connects([&](int c) { return s.cells[static_cast<std::size_t>(c)] == own; },
                                grid_.edge(p, false), grid_.edge(p, true));
}

bool ThreePlayerHex::can_still_connect(const State& s, PlayerId p) const {
  const auto own = static_cast<std::int8_t>(1 + p);
  return grid_.graph().connects(
      [&](int c) {
        const auto v = s.cells[static_cast<std::size_t>(c)];
        return v == 0 || v == own;
      },
      grid_.edge(p, false), grid_.edge(p, true));
}

void ThreePlayerHex::generate(const State& s, std::vector<Action>& out) const {
  for (int c = 0; c < grid_.cell_count(); ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0) out.push_back(Action{c});
}

std::string ThreePlayerHex::illegal_reason(const State& s, Action a) const {
  const int c = action_cell(a);
  if (c < 0 || c >= grid_.cell_count()) return "cell is outside the board";
  if (s.cells[static_cast<std::size_t>(c)] != 0) return "stones may only be placed on an unoccupied cell";
  return {};
}

void ThreePlayerHex::place(State& s, PlayerId p, int cell) const {
  s.cells[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(1 + p);
}

void ThreePlayerHex::settle(State& s, PlayerId last) const {
  if (connected(s, last)) {
    s.extra[0] = last;
  } else {
    bool open = false;
    for (PlayerId p = 0; p < 3 && !open; ++p) open = can_still_connect(s, p);
    s.extra[0] = open ? kOngoing : kDraw;
  }
  s.terminal = s.extra[0] != kOngoing;
}

void ThreePlayerHex::play(State& s, Action a) const {
  const PlayerId p = s.mover;
  place(s, p, action_cell(a));
  s.mover = (p + 1) % 3;
  settle(s, p);
}

void ThreePlayerHex::generate_for(const State& s, PlayerId, std::vector<Action>& out) const { generate(s, out); }

void ThreePlayerHex::play_for(State& s, PlayerId player, Action a) const {
  place(s, player, action_cell(a));
  settle(s, player);
}

std::string ThreePlayerHex::illegal_reason_for(const State& s, PlayerId, Action a) const { return illegal_reason(s, a); }

PayoffVector ThreePlayerHex::score(const State& s) const {
  if (s.extra[0] == kDraw) return PayoffVector(3, 0.0);
  return single_winner(3, s.extra[0], 1.0, -1.0);
}

std::uint64_t ThreePlayerHex::progress(const State& s) const {
  return static_cast<std::uint64_t>(std::count_if(s.cells.begin(), s.cells.end(), [](auto v) { return v != 0; }));
}

void ThreePlayerHex::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 3) fail(ErrorCode::parse_error, "three_player_hex: cell value out of range");
  int winners = 0;
  s.extra[0] = kOngoing;
  for (PlayerId p = 0; p < 3; ++p)
    if (connected(s, p)) {
      s.extra[0] = p;
      ++winners;
    }
  if (winners > 1) fail(ErrorCode::parse_error, "three_player_hex: more than one player is connected");
  if (winners == 0) {
    bool open = false;
    for (PlayerId p = 0; p < 3 && !open; ++p) open = can_still_connect(s, p);
    if (!open) s.extra[0] = kDraw;
  }
  s.terminal = s.extra[0] != kOngoing;
}

// ---------------------------------------------------------------------------
// Threehex

Threehex::Threehex(int side) : Game(3), grid_(side) {
  if (side < 2) fail(ErrorCode::invalid_config, "threehex: side must be >= 2");
}

State Threehex::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(grid_.cell_count()), 0);
  s.extra = {kOngoing, 0};
  return s;
}

bool Threehex::holds(std::int8_t cell, PlayerId p) {
  if (cell >= 1 && cell <= 3) return cell - 1 == p;
  if (cell >= 4) {
    const int top = cell - 4;
    return top == p || (top + 2) % 3 == p;
  }
  return false;
}

bool Threehex::placeable(std::int8_t cell, PlayerId q) { return cell == 0 || cell == 1 + (q + 2) % 3; }

bool Threehex::connected(const State& s, PlayerId p) const {
  return grid_.graph().connects([&](int c) { return holds(s.cells[static_cast<std::size_t>(c)], p); },
                                grid_.edge(p, false), grid_.edge(p, true));
}

void Threehex::generate_for(const State& s, PlayerId q, std::vector<Action>& out) const {
  for (int c = 0; c < grid_.cell_count(); ++c)
    if (placeable(s.cells[static_cast<std::size_t>(c)], q)) out.push_back(Action{c});
}

void Threehex::generate(const State& s, std::vector<Action>& out) const {
  generate_for(s, s.mover, out);
  if (out.empty()) out.push_back(kPass);
}

std::string Threehex::illegal_reason_for(const State& s, PlayerId q, Action a) const {
  const int c = action_cell(a);
  if (c < 0 || c >= grid_.cell_count()) return "cell is outside the board";
  const auto v = s.cells[static_cast<std::size_t>(c)];
  if (v >= 4) return "a cell holds at most two stones";
  if (!placeable(v, q))
    return "player " + std::to_string(q) + " may only cover a single stone of player " + std::to_string((q + 2) % 3);
  return {};
}

std::string Threehex::illegal_reason(const State& s, Action a) const {
  std::vector<Action> moves;
  generate_for(s, s.mover, moves);
  if (a == kPass) return moves.empty() ? std::string{} : "a player may pass only when no placement is legal";
  return illegal_reason_for(s, s.mover, a);
}

void Threehex::place(State& s, PlayerId q, int cell) const {
  auto& v = s.cells[static_cast<std::size_t>(cell)];
  v = static_cast<std::int8_t>(v == 0 ? 1 + q : 4 + q);
  if (connected(s, q)) {
    s.extra[0] = q;
  } else if (std::all_of(s.cells.begin(), s.cells.end(), [](auto x) { return x >= 4; })) {
    // Every cell is a full stack: nobody can place, so all players would pass.
    s.extra[0] = kDraw;
  }
  s.terminal = s.extra[0] != kOngoing;
}

void Threehex::play(State& s, Action a) const {
  const PlayerId q = s.mover;
  if (a == kPass) {
    ++s.extra[1];
  } else {
    s.extra[1] = 0;
    place(s, q, action_cell(a));
  }
  s.mover = (q + 1) % 3;
}

void Threehex::play_for(State& s, PlayerId q, Action a) const { place(s, q, action_cell(a)); }

PayoffVector Threehex::score(const State& s) const {
  if (s.extra[0] == kDraw) return PayoffVector(3, 0.0);
  return single_winner(3, s.extra[0], 1.0, -1.0);
}

std::uint64_t Threehex::progress(const State& s) const {
  std::uint64_t stones = 0;
  for (auto v : s.cells) stones += v == 0 ? 0 : (v >= 4 ? 2 : 1);
  return stones * 4 + static_cast<std::uint64_t>(s.extra[1]);
}

void Threehex::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 6) fail(ErrorCode::parse_error, "threehex: cell value out of range");
  if (s.extra[1] < 0 || s.extra[1] > 2) fail(ErrorCode::parse_error, "threehex: pass counter out of range");
  int winners = 0;
  s.extra[0] = kOngoing;
  for (PlayerId p = 0; p < 3; ++p)
    if (connected(s, p)) {
      s.extra[0] = p;
      ++winners;
    }
  if (winners > 1) fail(ErrorCode::parse_error, "threehex: more than one player is connected");
  if (winners == 0 && std::all_of(s.cells.begin(), s.cells.end(), [](auto x) { return x >= 4; })) s.extra[0] = kDraw;
  s.terminal = s.extra[0] != kOngoing;
}

// ---------------------------------------------------------------------------
// SeparedTeamhex

SeparedTeamhex::SeparedTeamhex(int n) : Game(4), grid_(n) {
  if (n < 2 || n % 2 != 0) fail(ErrorCode::invalid_config, "separed_teamhex: N must be even and >= 2");
  const auto cells = static_cast<std::size_t>(n * n);
  for (auto& e : player_edges_) e.assign(cells, false);
  for (auto& e : team_edges_) e.assign(cells, false);
  const int h = n / 2;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const auto i = static_cast<std::size_t>(r * n + c);
      const bool left = c == 0, right = c == n - 1, top = r == 0, bottom = r == n - 1;
      team_edges_[0][i] = left;
      team_edges_[1][i] = right;
      team_edges_[2][i] = top;
      team_edges_[3][i] = bottom;
      player_edges_[0][i] = left && r < h;
      player_edges_[1][i] = right && r < h;
      player_edges_[4][i] = left && r >= h;
      player_edges_[5][i] = right && r >= h;
      player_edges_[2][i] = top && c >= h;
      player_edges_[3][i] = bottom && c >= h;
      player_edges_[6][i] = top && c < h;
      player_edges_[7][i] = bottom && c < h;
    }
}

int SeparedTeamhex::zone_of(int cell) const {
  const int n = grid_.n(), h = n / 2;
  const int r = cell / n, c = cell % n;
  if (r < h) return c < h ? 0 : 1;
  return c >= h ? 2 : 3;
}

bool SeparedTeamhex::player_in_zone(PlayerId p, int zone) const {
  for (const auto& [player, z] : kCycle)
    if (player == p && z == zone) return true;
  return false;
}

State SeparedTeamhex::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(grid_.n() * grid_.n()), 0);
  s.extra = {0, kOngoing};
  s.mover = kCycle[0][0];
  return s;
}

bool SeparedTeamhex::strong_connection(const State& s, PlayerId p) const {
  const auto own = static_cast<std::int8_t>(1 + p);
  return grid_.graph().connects([&](int c) { return s.cells[static_cast<std::size_t>(c)] == own; },
                                player_edges_[static_cast<std::size_t>(2 * p)],
                                player_edges_[static_cast<std::size_t>(2 * p + 1)]);
}

bool SeparedTeamhex::team_connection(const State& s, int team) const {
  return grid_.graph().connects(
      [&](int c) {
        const int v = s.cells[static_cast<std::size_t>(c)];
        return v != 0 && team_of(v - 1) == team;
      },
      team_edges_[static_cast<std::size_t>(2 * team)], team_edges_[static_cast<std::size_t>(2 * team + 1)]);
}

bool SeparedTeamhex::zone_has_room(const State& s, int zone) const {
  for (int c = 0; c < static_cast<int>(s.cells.size()); ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0 && zone_of(c) == zone) return true;
  return false;
}

void SeparedTeamhex::generate(const State& s, std::vector<Action>& out) const {
  const int zone = kCycle[static_cast<std::size_t>(s.extra[0])][1];
  for (int c = 0; c < static_cast<int>(s.cells.size()); ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0 && zone_of(c) == zone) out.push_back(Action{c});
}

std::string SeparedTeamhex::illegal_reason(const State& s, Action a) const {
  const int c = action_cell(a);
  if (c < 0 || c >= static_cast<int>(s.cells.size())) return "cell is outside the board";
  if (s.cells[static_cast<std::size_t>(c)] != 0) return "each cell holds at most one stone";
  if (zone_of(c) != kCycle[static_cast<std::size_t>(s.extra[0])][1]) return "this turn step only allows the zone of the cycle";
  return {};
}

void SeparedTeamhex::generate_for(const State& s, PlayerId player, std::vector<Action>& out) const {
  for (int c = 0; c < static_cast<int>(s.cells.size()); ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0 && player_in_zone(player, zone_of(c))) out.push_back(Action{c});
}

std::string SeparedTeamhex::illegal_reason_for(const State& s, PlayerId player, Action a) const {
  const int c = action_cell(a);
  if (c < 0 || c >= static_cast<int>(s.cells.size())) return "cell is outside the board";
  if (s.cells[static_cast<std::size_t>(c)] != 0) return "each cell holds at most one stone";
  if (!player_in_zone(player, zone_of(c))) return "player may only play in its two zones";
  return {};
}

void SeparedTeamhex::place(State& s, PlayerId p, int cell) const {
  s.cells[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(1 + p);
  // Only the placing player's structures can have changed.
  if (strong_connection(s, p))
    s.extra[1] = p;
  else if (team_connection(s, team_of(p)))
    s.extra[1] = kTeamWin + team_of(p);
  s.terminal = s.extra[1] != kOngoing;
}

void SeparedTeamhex::advance(State& s) const {
  for (int i = 1; i <= 8; ++i) {
    const int step = (s.extra[0] + i) % 8;
    if (zone_has_room(s, kCycle[static_cast<std::size_t>(step)][1])) {
      s.extra[0] = step;
      s.mover = kCycle[static_cast<std::size_t>(step)][0];
      return;
    }
  }
  fail(ErrorCode::contract_violation, "separed_teamhex: board full without a winner");
}

void SeparedTeamhex::play(State& s, Action a) const {
  place(s, s.mover, action_cell(a));
  if (!s.terminal) advance(s);
}

void SeparedTeamhex::play_for(State& s, PlayerId player, Action a) const { place(s, player, action_cell(a)); }

PayoffVector SeparedTeamhex::score(const State& s) const {
  const int o = s.extra[1];
  if (o < kTeamWin) return single_winner(4, o, 2.0, -2.0);
  PayoffVector v(4, -1.0);
  for (PlayerId p = 0; p < 4; ++p)
    if (team_of(p) == o - kTeamWin) v[p] = 1.0;
  return v;
}

std::uint64_t SeparedTeamhex::progress(const State& s) const {
  return static_cast<std::uint64_t>(std::count_if(s.cells.begin(), s.cells.end(), [](auto v) { return v != 0; }));
}

void SeparedTeamhex::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 4) fail(ErrorCode::parse_error, "separed_teamhex: cell value out of range");
  if (s.extra[0] < 0 || s.extra[0] > 7) fail(ErrorCode::parse_error, "separed_teamhex: cycle step out of range");
  if (s.mover != kCycle[static_cast<std::size_t>(s.extra[0])][0])
    fail(ErrorCode::parse_error, "separed_teamhex: mover does not match the cycle step");
  s.extra[1] = kOngoing;
  for (PlayerId p = 0; p < 4 && s.extra[1] == kOngoing; ++p)
    if (strong_connection(s, p)) s.extra[1] = p;
  for (int t = 0; t < 2 && s.extra[1] == kOngoing; ++t)
    if (team_connection(s, t)) s.extra[1] = kTeamWin + t;
  s.terminal = s.extra[1] != kOngoing;
}

}  // namespace mps::games

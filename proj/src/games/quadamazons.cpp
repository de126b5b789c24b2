#include "games/quadamazons.hpp"

#include <algorithm>

namespace mps::games {
namespace {

constexpr int kQueen[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};

}  // namespace

Quadamazons::Quadamazons(int n, int d) : Game(4), n_(n), d_(d) {
  if (n < 6 || n % 2 != 0) fail(ErrorCode::invalid_config, "quadamazons: N must be even and >= 6");
  if (d < 0 || d >= n / 2) fail(ErrorCode::invalid_config, "quadamazons: d must satisfy 0 <= d < N/2");
}

bool Quadamazons::in_zone(PlayerId p, int cell) const {
  const int r = cell / n_, c = cell % n_, h = n_ / 2;
  switch (p) {
    case 0: return r < h + d_;
    case 1: return c >= h - d_;
    case 2: return r >= h - d_;
    default: return c < h + d_;
  }
}

int Quadamazons::sub_zone(PlayerId p, int cell) const {
  const int r = cell / n_, c = cell % n_, h = n_ / 2;
  return (p % 2 == 0) ? (c < h ? 0 : 1) : (r < h ? 0 : 1);
}

bool Quadamazons::eliminated(const State& s, PlayerId p) const {
  for (int i = 0; i < s.extra[kEliminated]; ++i)
    if (s.extra[static_cast<std::size_t>(kOrder + i)] == p) return true;
  return false;
}

int Quadamazons::alive(const State& s) const { return 4 - s.extra[kEliminated]; }

State Quadamazons::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(n_ * n_), 0);
  // Four amazons along player 0's outer row, the others by quarter turns
  // (r, c) -> (c, N - 1 - r).
  for (int k = 0; k < 4; ++k) {
    const int col = std::clamp((2 * k + 1) * n_ / 8, 1, n_ - 2);
    int r = 0, c = col;
    for (PlayerId p = 0; p < 4; ++p) {
      s.cells[static_cast<std::size_t>(r * n_ + c)] = static_cast<std::int8_t>(2 + p);
      const int nr = c, nc = n_ - 1 - r;
      r = nr;
      c = nc;
    }
  }
  s.extra.assign(kSlots, 0);
  s.extra[kFirstSubZone] = -1;
  for (int i = 0; i < 4; ++i) s.extra[static_cast<std::size_t>(kOrder + i)] = -1;
  s.extra[kStatus] = -1;
  s.extra[kMovedTo] = -1;
  s.extra[kMovedFrom] = -1;
  return s;
}

void Quadamazons::amazon_moves(const State& s, PlayerId p, int required_sub_zone, std::vector<Action>* out,
                               int* count) const {
  const auto own = static_cast<std::int8_t>(2 + p);
  for (int from = 0; from < n_ * n_; ++from) {
    if (s.cells[static_cast<std::size_t>(from)] != own) continue;
    const int r0 = from / n_, c0 = from % n_;
    for (const auto& dir : kQueen) {
      for (int r = r0 + dir[0], c = c0 + dir[1]; r >= 0 && r < n_ && c >= 0 && c < n_; r += dir[0], c += dir[1]) {
        const int to = r * n_ + c;
        // The whole path stays inside the player's band and over empty squares.
        if (s.cells[static_cast<std::size_t>(to)] != 0 || !in_zone(p, to)) break;
        if (required_sub_zone >= 0 && sub_zone(p, to) == required_sub_zone) continue;
        if (count) ++*count;
        if (out) out->push_back(Action{from * n_ * n_ + to});
      }
    }
  }
  if (out) std::sort(out->begin(), out->end());
}

void Quadamazons::arrow_moves(const State& s, PlayerId p, std::vector<Action>& out) const {
  const int at = s.extra[kMovedTo], origin = s.extra[kMovedFrom];
  const int zone = sub_zone(p, at);
  const int r0 = at / n_, c0 = at % n_;
  for (const auto& dir : kQueen)
    for (int r = r0 + dir[0], c = c0 + dir[1]; r >= 0 && r < n_ && c >= 0 && c < n_; r += dir[0], c += dir[1]) {
      const int to = r * n_ + c;
      if (s.cells[static_cast<std::size_t>(to)] != 0) break;
      if (to == origin || (in_zone(p, to) && sub_zone(p, to) == zone)) out.push_back(Action{to});
    }
  std::sort(out.begin(), out.end());
}

int Quadamazons::mobility(const State& s, PlayerId p) const {
  int count = 0;
  amazon_moves(s, p, -1, nullptr, &count);
  return count;
}

void Quadamazons::generate(const State& s, std::vector<Action>& out) const {
  if (s.extra[kPhase] == 1) {
    arrow_moves(s, s.mover, out);
    return;
  }
  amazon_moves(s, s.mover, s.extra[kStep] == 1 ? s.extra[kFirstSubZone] : -1, &out, nullptr);
}

std::string Quadamazons::illegal_reason(const State& s, Action a) const {
  std::vector<Action> moves;
  generate(s, moves);
  if (std::binary_search(moves.begin(), moves.end(), a)) return {};
  if (s.extra[kPhase] == 1) {
    if (a.code < 0 || a.code >= n_ * n_) return "arrow target is outside the board";
    return "the arrow must fly like a queen from the moved amazon and land in its new sub-zone or on the square it left";
  }
  const int nn = n_ * n_;
  if (a.code < 0 || a.code >= nn * nn) return "move encoding is outside the board";
  const int from = a.code / nn, to = a.code % nn;
  if (s.cells[static_cast<std::size_t>(from)] != 2 + s.mover) return "the origin must hold one of the mover's amazons";
  if (!in_zone(s.mover, to)) return "amazons may only move within their player's zone";
  if (s.extra[kStep] == 1 && sub_zone(s.mover, to) == s.extra[kFirstSubZone])
    return "the second amazon must end up in the other sub-zone";
  return "amazons move like a queen over empty squares";
}

void Quadamazons::eliminate(State& s, PlayerId p) const {
  s.extra[static_cast<std::size_t>(kOrder + s.extra[kEliminated])] = p;
  ++s.extra[kEliminated];
}

void Quadamazons::begin_turn(State& s, PlayerId first) const {
  s.extra[kStep] = 0;
  s.extra[kPhase] = 0;
  s.extra[kMovedTo] = -1;
  s.extra[kMovedFrom] = -1;
  s.extra[kFirstSubZone] = -1;
  for (int i = 0; i < 4; ++i) {
    const PlayerId p = (first + i) % 4;
    if (eliminated(s, p)) continue;
    if (mobility(s, p) > 0) {
      if (alive(s) == 1) break;
      s.mover = p;
      return;
    }
    eliminate(s, p);
    if (alive(s) <= 1) break;
  }
  // One player left (or none): the game is over.
  s.terminal = true;
  if (alive(s) == 1) {
    PlayerId survivor = 0;
    while (eliminated(s, survivor)) ++survivor;
    const int moves = mobility(s, survivor);
    if (moves > 0) {
      s.extra[kStatus] = 1;
      s.extra[kSurvivorMoves] = moves;
      s.mover = survivor;
      return;
    }
    eliminate(s, survivor);
  }
  s.extra[kStatus] = 0;
}

void Quadamazons::play(State& s, Action a) const {
  const PlayerId p = s.mover;
  if (s.extra[kPhase] == 0) {
    const int nn = n_ * n_;
    const int from = a.code / nn, to = a.code % nn;
    s.cells[static_cast<std::size_t>(to)] = s.cells[static_cast<std::size_t>(from)];
    s.cells[static_cast<std::size_t>(from)] = 0;
    s.extra[kMovedFrom] = from;
    s.extra[kMovedTo] = to;
    s.extra[kPhase] = 1;
    return;
  }
  s.cells[static_cast<std::size_t>(a.code)] = 1;
  if (s.extra[kStep] == 0) {
    s.extra[kFirstSubZone] = sub_zone(p, s.extra[kMovedTo]);
    s.extra[kStep] = 1;
    s.extra[kPhase] = 0;
    s.extra[kMovedTo] = -1;
    s.extra[kMovedFrom] = -1;
    int second = 0;
    amazon_moves(s, p, s.extra[kFirstSubZone], nullptr, &second);
    if (second > 0) return;
    // No legal second step: it is passed.
  }
  begin_turn(s, (p + 1) % 4);
}

PayoffVector Quadamazons::score(const State& s) const {
  PayoffVector v(4, 0.0);
  const auto order = [&](int i) { return s.extra[static_cast<std::size_t>(kOrder + i)]; };
  if (s.extra[kStatus] == 0) {
    for (int i = 0; i < 4; ++i) v[order(i)] = i - 2;  // first eliminated -2 ... last eliminated 1
  } else {
    const double moves = s.extra[kSurvivorMoves];
    v[s.mover] = moves;
    v[order(2)] = 0;
    v[order(1)] = -moves;
    v[order(0)] = -2 * moves;
  }
  return v;
}

std::uint64_t Quadamazons::progress(const State& s) const {
  const auto arrows = std::count(s.cells.begin(), s.cells.end(), std::int8_t{1});
  return static_cast<std::uint64_t>(arrows) * 2 + static_cast<std::uint64_t>(s.extra[kPhase]);
}

std::string Quadamazons::action_to_string(Action a) const {
  const int nn = n_ * n_;
  if (a.code >= nn) return std::to_string(a.code / nn) + "-" + std::to_string(a.code % nn);
  return "x" + std::to_string(a.code);
}

void Quadamazons::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 5) fail(ErrorCode::parse_error, "quadamazons: cell value out of range");
  if (s.extra[kStep] < 0 || s.extra[kStep] > 1 || s.extra[kPhase] < 0 || s.extra[kPhase] > 1)
    fail(ErrorCode::parse_error, "quadamazons: step/phase out of range");
  if (s.extra[kEliminated] < 0 || s.extra[kEliminated] > 4) fail(ErrorCode::parse_error, "quadamazons: bad elimination count");
  s.terminal = s.extra[kStatus] != -1;
}

}  // namespace mps::games

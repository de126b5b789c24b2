#include "games/othello_games.hpp"

#include <algorithm>

namespace mps::games {

// ---------------------------------------------------------------------------
// Quadrothello

namespace {

constexpr int kDirs8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};

// Local 4x4 start block: player 0's stones; the other players' stones are the
// 90-degree rotations (i, j) -> (j, 3 - i) of these.
constexpr int kStartBlock[4][2] = {{0, 0}, {2, 0}, {0, 2}, {2, 2}};

}  // namespace

Quadrothello::Quadrothello(int n) : Game(4), n_(n) {
  if (n < 4 || n % 2 != 0) fail(ErrorCode::invalid_config, "quadrothello: N must be even and >= 4");
}

bool Quadrothello::in_zone(PlayerId p, int cell) const {
  const int r = cell / n_, c = cell % n_, h = n_ / 2;
  switch (p) {
    case 0: return r < h;
    case 1: return c >= h;
    case 2: return r >= h;
    default: return c < h;
  }
}

State Quadrothello::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(n_ * n_), 0);
  const int base = n_ / 2 - 2;
  for (const auto& cell : kStartBlock) {
    int i = cell[0], j = cell[1];
    for (PlayerId p = 0; p < 4; ++p) {
      s.cells[static_cast<std::size_t>((base + i) * n_ + base + j)] = static_cast<std::int8_t>(1 + p);
      const int ni = j, nj = 3 - i;
      i = ni;
      j = nj;
    }
  }
  return s;
}

int Quadrothello::capture(const State& s, PlayerId p, int cell, State* out) const {
  const auto own = static_cast<std::int8_t>(1 + p);
  const int r0 = cell / n_, c0 = cell % n_;
  int total = 0;
  for (const auto& d : kDirs8) {
    int r = r0 + d[0], c = c0 + d[1], run = 0;
    while (r >= 0 && r < n_ && c >= 0 && c < n_) {
      const auto v = s.cells[static_cast<std::size_t>(r * n_ + c)];
      if (v == 0) {
        run = 0;
        break;
      }
      if (v == own) break;
      ++run;
      r += d[0];
      c += d[1];
    }
    if (run == 0 || r < 0 || r >= n_ || c < 0 || c >= n_) continue;
    total += run;
    if (!out) return total;
    for (int k = 1; k <= run; ++k) out->cells[static_cast<std::size_t>((r0 + k * d[0]) * n_ + c0 + k * d[1])] = own;
  }
  return total;
}

bool Quadrothello::has_move(const State& s, PlayerId p) const {
  for (int c = 0; c < n_ * n_; ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0 && in_zone(p, c) && capture(s, p, c, nullptr) > 0) return true;
  return false;
}

void Quadrothello::generate_for(const State& s, PlayerId p, std::vector<Action>& out) const {
  for (int c = 0; c < n_ * n_; ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0 && in_zone(p, c) && capture(s, p, c, nullptr) > 0)
      out.push_back(Action{c});
}

void Quadrothello::generate(const State& s, std::vector<Action>& out) const { generate_for(s, s.mover, out); }

std::string Quadrothello::illegal_reason_for(const State& s, PlayerId p, Action a) const {
  const int c = a.code;
  if (c < 0 || c >= n_ * n_) return "cell is outside the board";
  if (s.cells[static_cast<std::size_t>(c)] != 0) return "the cell must be empty";
  if (!in_zone(p, c)) return "placements must be inside the player's zone";
  if (capture(s, p, c, nullptr) == 0)
    return "the stone must enclose a line of opponent stones against an own stone";
  return {};
}

std::string Quadrothello::illegal_reason(const State& s, Action a) const { return illegal_reason_for(s, s.mover, a); }

void Quadrothello::play_for(State& s, PlayerId p, Action a) const {
  capture(s, p, a.code, &s);
  s.cells[static_cast<std::size_t>(a.code)] = static_cast<std::int8_t>(1 + p);
  s.terminal = true;
  for (PlayerId q = 0; q < 4 && s.terminal; ++q) s.terminal = !has_move(s, q);
}

void Quadrothello::play(State& s, Action a) const {
  const PlayerId p = s.mover;
  capture(s, p, a.code, &s);
  s.cells[static_cast<std::size_t>(a.code)] = static_cast<std::int8_t>(1 + p);
  for (int i = 1; i <= 4; ++i) {
    const PlayerId q = (p + i) % 4;
    if (has_move(s, q)) {
      s.mover = q;
      return;
    }
  }
  s.terminal = true;
}

int Quadrothello::stones(const State& s, PlayerId p) const {
  return static_cast<int>(std::count(s.cells.begin(), s.cells.end(), static_cast<std::int8_t>(1 + p)));
}

PayoffVector Quadrothello::score(const State& s) const {
  PayoffVector v(4);
  for (PlayerId p = 0; p < 4; ++p) v[p] = stones(s, p);
  return v;
}

std::uint64_t Quadrothello::progress(const State& s) const {
  return static_cast<std::uint64_t>(std::count_if(s.cells.begin(), s.cells.end(), [](auto v) { return v != 0; }));
}

void Quadrothello::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 4) fail(ErrorCode::parse_error, "quadrothello: cell value out of range");
  s.terminal = true;
  for (PlayerId q = 0; q < 4 && s.terminal; ++q) s.terminal = !has_move(s, q);
  if (!s.terminal && !has_move(s, s.mover)) fail(ErrorCode::parse_error, "quadrothello: the mover has no legal move");
}

// ---------------------------------------------------------------------------
// Triinversion

Triinversion::Triinversion(int side) : Game(3), grid_(side) {
  if (side < 2) fail(ErrorCode::invalid_config, "triinversion: l must be >= 2");
}

int Triinversion::step(int cell, int d) const {
  int next = grid_.graph().neighbors[static_cast<std::size_t>(cell)][static_cast<std::size_t>(d)];
  if (next == grid_.center()) next = grid_.graph().neighbors[static_cast<std::size_t>(next)][static_cast<std::size_t>(d)];
  return next;
}

State Triinversion::make_initial() const {
  State s;
  s.cells.assign(static_cast<std::size_t>(grid_.cell_count()), 0);
  for (int d = 0; d < 6; ++d) {
    const int cell = grid_.graph().neighbors[static_cast<std::size_t>(grid_.center())][static_cast<std::size_t>(d)];
    s.cells[static_cast<std::size_t>(cell)] = static_cast<std::int8_t>(1 + d % 3);
  }
  s.extra = {0};
  return s;
}

int Triinversion::capture(const State& s, PlayerId p, int cell, State* out) const {
  const auto own = static_cast<std::int8_t>(1 + p);
  const auto direct = static_cast<std::int8_t>(1 + direct_opponent(p));
  const auto indirect = static_cast<std::int8_t>(1 + indirect_opponent(p));
  int total = 0;
  for (int d = 0; d < 6; ++d) {
    int c = step(cell, d), run = 0;
    while (c >= 0 && s.cells[static_cast<std::size_t>(c)] == direct) {
      ++run;
      c = step(c, d);
    }
    if (run == 0 || c < 0) continue;
    const auto closer = s.cells[static_cast<std::size_t>(c)];
    if (closer != own && closer != indirect) continue;
    total += run;
    if (!out) return total;
    for (int f = step(cell, d); f != c; f = step(f, d)) out->cells[static_cast<std::size_t>(f)] = own;
  }
  return total;
}

void Triinversion::generate_for(const State& s, PlayerId p, std::vector<Action>& out) const {
  for (int c = 0; c < grid_.cell_count(); ++c)
    if (c != grid_.center() && s.cells[static_cast<std::size_t>(c)] == 0 && capture(s, p, c, nullptr) > 0)
      out.push_back(Action{c});
}

bool Triinversion::has_move(const State& s, PlayerId p) const {
  for (int c = 0; c < grid_.cell_count(); ++c)
    if (c != grid_.center() && s.cells[static_cast<std::size_t>(c)] == 0 && capture(s, p, c, nullptr) > 0) return true;
  return false;
}

void Triinversion::generate(const State& s, std::vector<Action>& out) const {
  generate_for(s, s.mover, out);
  if (out.empty()) out.push_back(kPass);
}

std::string Triinversion::illegal_reason_for(const State& s, PlayerId p, Action a) const {
  const int c = a.code;
  if (c < 0 || c >= grid_.cell_count()) return "cell is outside the board";
  if (c == grid_.center()) return "the central position is not playable";
  if (s.cells[static_cast<std::size_t>(c)] != 0) return "the cell must be empty";
  if (capture(s, p, c, nullptr) == 0)
    return "the piece must enclose a line of the direct opponent against an own or indirect-opponent piece";
  return {};
}

std::string Triinversion::illegal_reason(const State& s, Action a) const {
  if (a == kPass) return has_move(s, s.mover) ? "a player may pass only without a legal placement" : std::string{};
  return illegal_reason_for(s, s.mover, a);
}

void Triinversion::refresh_terminal(State& s) const {
  s.terminal = true;
  for (PlayerId q = 0; q < 3 && s.terminal; ++q) s.terminal = !has_move(s, q);
}

void Triinversion::play(State& s, Action a) const {
  const PlayerId p = s.mover;
  if (a == kPass) {
    ++s.extra[0];
  } else {
    s.extra[0] = 0;
    capture(s, p, a.code, &s);
    s.cells[static_cast<std::size_t>(a.code)] = static_cast<std::int8_t>(1 + p);
    refresh_terminal(s);
  }
  s.mover = (p + 1) % 3;
}

void Triinversion::play_for(State& s, PlayerId p, Action a) const {
  capture(s, p, a.code, &s);
  s.cells[static_cast<std::size_t>(a.code)] = static_cast<std::int8_t>(1 + p);
  refresh_terminal(s);
}

int Triinversion::pieces(const State& s, PlayerId p) const {
  return static_cast<int>(std::count(s.cells.begin(), s.cells.end(), static_cast<std::int8_t>(1 + p)));
}

PayoffVector Triinversion::score(const State& s) const {
  PayoffVector v(3);
  for (PlayerId p = 0; p < 3; ++p) v[p] = pieces(s, p) + pieces(s, indirect_opponent(p));
  return v;
}

std::uint64_t Triinversion::progress(const State& s) const {
  const auto stones = std::count_if(s.cells.begin(), s.cells.end(), [](auto v) { return v != 0; });
  return static_cast<std::uint64_t>(stones) * 3 + static_cast<std::uint64_t>(s.extra[0]);
}

void Triinversion::normalize_parsed(State& s) const {
  for (auto v : s.cells)
    if (v < 0 || v > 3) fail(ErrorCode::parse_error, "triinversion: cell value out of range");
  if (s.cells[static_cast<std::size_t>(grid_.center())] != 0) fail(ErrorCode::parse_error, "triinversion: centre must stay empty");
  if (s.extra[0] < 0 || s.extra[0] > 2) fail(ErrorCode::parse_error, "triinversion: pass counter out of range");
  refresh_terminal(s);
}

}  // namespace mps::games

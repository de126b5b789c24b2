#include "games/hey_fish.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace mps::games {
namespace {

constexpr int kAxial[6][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

// Fisher-Yates with raw engine output so the layout does not depend on the
// standard library's distribution implementation.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

HeyFish::HeyFish(const HeyFishConfig& config)
    : Game(config.players), rows_(config.rows), cols_(config.cols), penguins_(config.penguins), seed_(config.seed) {
  if (config.players < 2 || config.players > kMaxPlayers) fail(ErrorCode::invalid_config, "hey_fish: players must be in [2, 4]");
  if (rows_ < 2 || cols_ < 2 || rows_ * cols_ > 35 * 35) fail(ErrorCode::invalid_config, "hey_fish: bad grid size");
  if (penguins_ < 1) fail(ErrorCode::invalid_config, "hey_fish: at least one penguin per player");
  const int n = rows_ * cols_;
  if (!config.fish.empty()) {
    if (static_cast<int>(config.fish.size()) != n) fail(ErrorCode::invalid_config, "hey_fish: fish list must cover the grid");
    for (int f : config.fish)
      if (f < 1 || f > 3) fail(ErrorCode::invalid_config, "hey_fish: fish counts must be 1..3");
    fish_ = config.fish;
  } else {
    const int n1 = static_cast<int>(std::lround(n / 2.0));
    const int n2 = static_cast<int>(std::lround(n / 3.0));
    fish_.assign(static_cast<std::size_t>(n1), 1);
    fish_.insert(fish_.end(), static_cast<std::size_t>(n2), 2);
    fish_.insert(fish_.end(), static_cast<std::size_t>(n - n1 - n2), 3);
    std::mt19937_64 rng(seed_);
    shuffle(fish_, rng);
  }
  if (std::count(fish_.begin(), fish_.end(), 1) < config.players * penguins_)
    fail(ErrorCode::invalid_config, "hey_fish: not enough one-fish tiles for the starting penguins");
}

nlohmann::json HeyFish::config() const {
  return {{"rows", rows_}, {"cols", cols_}, {"players", num_players()}, {"penguins", penguins_},
          {"seed", seed_}, {"fish", fish_}};
}

int HeyFish::neighbor(int cell, int d) const {
  const int row = cell / cols_, col = cell % cols_;
  const int q = col - (row - (row & 1)) / 2;
  const int r2 = row + kAxial[d][1];
  const int q2 = q + kAxial[d][0];
  const int c2 = q2 + (r2 - (r2 & 1)) / 2;
  if (r2 < 0 || r2 >= rows_ || c2 < 0 || c2 >= cols_) return -1;
  return r2 * cols_ + c2;
}

State HeyFish::make_initial() const {
  State s;
  const int players = num_players();
  s.cells.assign(fish_.begin(), fish_.end());
  s.extra.assign(static_cast<std::size_t>(players + players * penguins_), 0);
  std::vector<int> ones;
  for (int c = 0; c < rows_ * cols_; ++c)
    if (fish_[static_cast<std::size_t>(c)] == 1) ones.push_back(c);
  std::mt19937_64 rng(seed_ ^ 0x70656e6775696e73ULL);
  shuffle(ones, rng);
  // Round-robin: every player's first penguin, then every second one, ...
  std::size_t next = 0;
  for (int k = 0; k < penguins_; ++k)
    for (PlayerId p = 0; p < players; ++p)
      s.extra[static_cast<std::size_t>(players + p * penguins_ + k)] = ones[next++];
  lift_stuck(s);
  advance(s, 0);
  return s;
}

std::vector<bool> HeyFish::occupancy(const State& s) const {
  std::vector<bool> occupied(static_cast<std::size_t>(rows_ * cols_), false);
  for (std::size_t i = static_cast<std::size_t>(num_players()); i < s.extra.size(); ++i)
    if (s.extra[i] >= 0) occupied[static_cast<std::size_t>(s.extra[i])] = true;
  return occupied;
}

bool HeyFish::can_move(const State& s, const std::vector<bool>& occupied, int cell) const {
  for (int d = 0; d < 6; ++d) {
    const int nb = neighbor(cell, d);
    if (nb >= 0 && s.cells[static_cast<std::size_t>(nb)] != 0 && !occupied[static_cast<std::size_t>(nb)]) return true;
  }
  return false;
}

void HeyFish::lift_stuck(State& s) const {
  const auto players = static_cast<std::size_t>(num_players());
  bool changed = true;
  while (changed) {
    changed = false;
    const auto occupied = occupancy(s);
    for (std::size_t i = players; i < s.extra.size(); ++i) {
      const int cell = s.extra[i];
      if (cell < 0 || can_move(s, occupied, cell)) continue;
      const auto owner = (i - players) / static_cast<std::size_t>(penguins_);
      s.extra[owner] += s.cells[static_cast<std::size_t>(cell)];
      s.cells[static_cast<std::size_t>(cell)] = 0;
      s.extra[i] = -1;
      changed = true;
    }
  }
}

void HeyFish::advance(State& s, PlayerId from) const {
  const int players = num_players();
  for (int i = 0; i < players; ++i) {
    const PlayerId p = (from + i) % players;
    for (int k = 0; k < penguins_; ++k)
      if (penguin_cell(s, p, k) >= 0) {
        s.mover = p;
        s.terminal = false;
        return;
      }
  }
  s.terminal = true;
}

void HeyFish::generate(const State& s, std::vector<Action>& out) const {
  const auto occupied = occupancy(s);
  const int nc = rows_ * cols_;
  for (int k = 0; k < penguins_; ++k) {
    const int from = penguin_cell(s, s.mover, k);
    if (from < 0) continue;
    for (int d = 0; d < 6; ++d)
      for (int to = neighbor(from, d); to >= 0; to = neighbor(to, d)) {
        if (s.cells[static_cast<std::size_t>(to)] == 0 || occupied[static_cast<std::size_t>(to)]) break;
        out.push_back(Action{from * nc + to});
      }
  }
  std::sort(out.begin(), out.end());
}

std::string HeyFish::illegal_reason(const State& s, Action a) const {
  std::vector<Action> moves;
  generate(s, moves);
  if (std::binary_search(moves.begin(), moves.end(), a)) return {};
  const int nc = rows_ * cols_;
  if (a.code < 0 || a.code >= nc * nc) return "move encoding is outside the board";
  const int from = a.code / nc;
  bool own = false;
  for (int k = 0; k < penguins_; ++k) own = own || penguin_cell(s, s.mover, k) == from;
  if (!own) return "the origin must hold one of the mover's penguins";
  return "penguins slide in a straight line over intact, unoccupied tiles";
}

void HeyFish::play(State& s, Action a) const {
  const int nc = rows_ * cols_;
  const int from = a.code / nc, to = a.code % nc;
  const PlayerId p = s.mover;
  for (int k = 0; k < penguins_; ++k) {
    auto& slot = s.extra[static_cast<std::size_t>(num_players() + p * penguins_ + k)];
    if (slot == from) {
      slot = to;
      break;
    }
  }
  s.extra[static_cast<std::size_t>(p)] += s.cells[static_cast<std::size_t>(from)];
  s.cells[static_cast<std::size_t>(from)] = 0;
  lift_stuck(s);
  advance(s, (p + 1) % num_players());
}

PayoffVector HeyFish::score(const State& s) const {
  PayoffVector v(num_players());
  for (PlayerId p = 0; p < num_players(); ++p) v[p] = score_of(s, p);
  return v;
}

int HeyFish::reachable_fish(const State& s, PlayerId p) const {
  const auto occupied = occupancy(s);
  std::set<int> tiles;
  for (int k = 0; k < penguins_; ++k) {
    const int from = penguin_cell(s, p, k);
    if (from < 0) continue;
    for (int d = 0; d < 6; ++d)
      for (int to = neighbor(from, d); to >= 0; to = neighbor(to, d)) {
        if (s.cells[static_cast<std::size_t>(to)] == 0 || occupied[static_cast<std::size_t>(to)]) break;
        tiles.insert(to);
      }
  }
  int total = 0;
  for (int t : tiles) total += s.cells[static_cast<std::size_t>(t)];
  return total;
}

std::uint64_t HeyFish::progress(const State& s) const {
  return static_cast<std::uint64_t>(std::count(s.cells.begin(), s.cells.end(), std::int8_t{0}));
}

std::string HeyFish::action_to_string(Action a) const {
  const int nc = rows_ * cols_;
  return std::to_string(a.code / nc) + "-" + std::to_string(a.code % nc);
}

void HeyFish::normalize_parsed(State& s) const {
  const int players = num_players();
  if (s.cells.size() != static_cast<std::size_t>(rows_ * cols_) ||
      s.extra.size() != static_cast<std::size_t>(players + players * penguins_))
    fail(ErrorCode::parse_error, "hey_fish: wrong state shape");
  for (auto v : s.cells)
    if (v < 0 || v > 3) fail(ErrorCode::parse_error, "hey_fish: fish count out of range");
  for (std::size_t i = static_cast<std::size_t>(players); i < s.extra.size(); ++i) {
    const int c = s.extra[i];
    if (c >= rows_ * cols_ || (c >= 0 && s.cells[static_cast<std::size_t>(c)] == 0))
      fail(ErrorCode::parse_error, "hey_fish: penguin off an intact tile");
  }
  advance(s, s.mover);
}

}  // namespace mps::games

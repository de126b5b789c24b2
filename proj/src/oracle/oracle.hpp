#pragma once

#include <string>
#include <unordered_map>

#include "core/game.hpp"

namespace mps::oracle {

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

// How a mover picks among children.
//   value:            max^n on f_t (v_p), as fixed-depth max^n does;
//   completion_value: (c_p, v_p) with c = f_b at terminals, as the
//                     best-first search with completion does.
// Both break ties toward the lowest ordinal.
enum class Rule { value, completion_value };

const char* rule_name(Rule rule);

struct Solved {
  PayoffVector v;  // propagated f_t
  PayoffVector c;  // propagated f_b
  Action best{};
  bool has_action = false;
  PlayerId mover = 0;
};

struct SolvedTable {
  std::string game;
  nlohmann::json config;
  Rule rule = Rule::value;
  ZobristKey root = 0;
  std::unordered_map<ZobristKey, Solved> entries;

  const Solved& at(const State& s) const;
};

// Exhaustive memoized max^n over the reachable space of `s`. cap_exceeded
// when more than `cap` states would be stored.
SolvedTable solve_maxn(const Game& game, const State& s, Rule rule = Rule::value, std::uint64_t cap = kDefaultCap);

struct ParanoidSolution {
  double value = 0;
  Action best{};
  bool has_action = false;
};

// Exhaustive max/min on the root player's f_t component.
ParanoidSolution solve_paranoid(const Game& game, const State& s, PlayerId root_player,
                                std::uint64_t cap = kDefaultCap);

// Distinct reachable states including `s`; cap + 1 once the count passes cap.
std::uint64_t count_states(const Game& game, const State& s, std::uint64_t cap = kDefaultCap);

// Binary fixture: "MPSO", u32 header length, JSON header, then per entry
// key u64, mover u8, has_action u8, best i32, P doubles v, P doubles c.
void write_fixture(const std::string& path, const SolvedTable& table, int players);
SolvedTable read_fixture(const std::string& path);

}  // namespace mps::oracle

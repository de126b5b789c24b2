#pragma once

#include <string>
#include <vector>

#include "harness/agents.hpp"

namespace mps::harness {

struct MatchRecord {
  std::string key;  // primary key for resume
  std::string game;
  nlohmann::json config;
  std::string algorithm;  // evaluated algorithm ("" outside tournaments)
  int seat = -1;          // evaluated seat
  int i = -1;             // evaluated agent's evaluator index
  int j = -1;             // first opponent evaluator index
  std::vector<std::string> agents;  // per seat: algorithm id
  std::vector<int> evaluators;      // per seat: evaluator index
  std::vector<std::int32_t> moves;
  std::vector<double> move_seconds;
  PayoffVector scores;   // f_t (empty on forfeit)
  PayoffVector outcome;  // f_b (empty on forfeit)
  std::string status = "ok";  // "ok" or "forfeit"
  int forfeiter = -1;
  std::int32_t forfeit_action = 0;
  std::string failure;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const MatchRecord& r);
MatchRecord record_from_json(const nlohmann::json& j);

// Plays one match, seat p driven by agents[p]. An agent that throws or
// returns an illegal action forfeits: the record keeps the moves so far and
// names the forfeiter.
MatchRecord play_match(const GamePtr& game, const std::vector<AgentSpec>& agents, std::uint64_t seed);

// Replays the move list; true iff it reproduces the recorded result (for a
// forfeit: the forfeit action is rejected at the recorded point).
bool replay(const Game& game, const MatchRecord& record);

// 1 win, 0 draw or all-way tie, -1 loss; a forfeiter scores -1 and everyone
// else 1.
int binary_score(const MatchRecord& record, PlayerId player);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace mps::harness

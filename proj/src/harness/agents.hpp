#pragma once

#include <memory>
#include <string>

#include "eval/evaluator.hpp"
#include "search/common.hpp"

namespace mps::harness {

// Algorithm ids: umaxn, umaxn-safe, maxn, kbest:<k>, paranoid, brs, brs+,
// mcts:<C>, mctsh:<C>, random. C accepts a number or sqrt2[/d].
struct AgentSpec {
  std::string algorithm;
  std::string evaluator_family = "heuristic";
  int evaluator = 0;  // variant index
  search::Budget budget = search::Budget::node_budget(1000);

  std::string evaluator_id(const Game& game) const;
};

nlohmann::json to_json(const search::Budget& budget);
search::Budget budget_from_json(const nlohmann::json& j);

class Agent {
 public:
  virtual ~Agent() = default;
  // `seed` drives any randomness of this move.
  virtual Action choose(const State& s, std::uint64_t seed) = 0;
  // Statistics of the latest choose() call.
  const search::SearchResult& last() const { return last_; }

 protected:
  search::SearchResult last_;
};

// Throws invalid_config (bad id or parameters) or capability_missing.
std::unique_ptr<Agent> make_agent(const GamePtr& game, const AgentSpec& spec);

// Checks the algorithm id without building anything.
void validate_algorithm(const std::string& algorithm);

double parse_exploration(const std::string& text);

}  // namespace mps::harness

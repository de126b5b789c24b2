#include "harness/agents.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "eval/heuristics.hpp"
#include "eval/normalize.hpp"
#include "search/depth.hpp"
#include "search/mcts.hpp"
#include "search/unbounded.hpp"

namespace mps::harness {
namespace {

constexpr int kCalibrationMatches = 20;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(GamePtr game) : game_(std::move(game)) {}
  Action choose(const State& s, std::uint64_t seed) override {
    std::mt19937_64 rng(seed);
    last_ = {};
    last_.chosen = eval::uniform_policy(*game_, s, rng);
    return last_.chosen;
  }

 private:
  GamePtr game_;
};

class UnboundedAgent final : public Agent {
 public:
  UnboundedAgent(GamePtr game, eval::EvaluatorPtr evaluator, search::Budget budget, search::Decision decision)
      : game_(std::move(game)), evaluator_(std::move(evaluator)), budget_(budget), decision_(decision) {}
  Action choose(const State& s, std::uint64_t) override {
    search::UnboundedMaxn search(*game_, *evaluator_);
    last_ = search.search(s, budget_, decision_);
    return last_.chosen;
  }

 private:
  GamePtr game_;
  eval::EvaluatorPtr evaluator_;
  search::Budget budget_;
  search::Decision decision_;
};

class DepthAgent final : public Agent {
 public:
  DepthAgent(GamePtr game, eval::EvaluatorPtr evaluator, search::Budget budget, search::DepthAlgorithm algorithm,
             search::DepthOptions options)
      : game_(std::move(game)), evaluator_(std::move(evaluator)), budget_(budget),
        search_(*game_, *evaluator_, algorithm, options) {}
  Action choose(const State& s, std::uint64_t) override {
    last_ = search::iterative_deepening(search_, s, budget_);
    return last_.chosen;
  }

 private:
  GamePtr game_;
  eval::EvaluatorPtr evaluator_;
  search::Budget budget_;
  search::DepthSearch search_;
};

class MctsAgent final : public Agent {
 public:
  MctsAgent(GamePtr game, eval::EvaluatorPtr evaluator, search::Budget budget, double c)
      : game_(std::move(game)), evaluator_(std::move(evaluator)), budget_(budget), c_(c) {}
  Action choose(const State& s, std::uint64_t seed) override {
    search::Mcts mcts(*game_, c_, seed, evaluator_.get());
    last_ = mcts.search(s, budget_);
    return last_.chosen;
  }

 private:
  GamePtr game_;
  eval::EvaluatorPtr evaluator_;
  search::Budget budget_;
  double c_;
};

// Normalized evaluators are calibrated once per evaluator id and game config.
eval::EvaluatorPtr normalized(const GamePtr& game, const eval::EvaluatorPtr& raw) {
  static std::mutex mutex;
  static std::map<std::string, eval::EvaluatorPtr> cache;
  const auto key = raw->id() + "|" + game->config().dump();
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::uint64_t seed = fnv1a(key);
  const auto calibration = eval::calibrate_bounds(*raw, eval::uniform_policy, kCalibrationMatches, seed);
  auto out = eval::normalize(raw, calibration.bounds);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, out).first->second;
}

}  // namespace

std::string AgentSpec::evaluator_id(const Game& game) const {
  return game.name() + ":" + evaluator_family + ":" + std::to_string(evaluator);
}

nlohmann::json to_json(const search::Budget& budget) {
  if (budget.mode == search::Budget::Mode::nodes) return {{"mode", "nodes"}, {"value", budget.nodes}};
  return {{"mode", "time"}, {"value", budget.seconds}};
}

search::Budget budget_from_json(const nlohmann::json& j) {
  const auto mode = j.at("mode").get<std::string>();
  search::Budget out;
  if (mode == "nodes") out = search::Budget::node_budget(j.at("value").get<std::uint64_t>());
  else if (mode == "time") out = search::Budget::time_budget(j.at("value").get<double>());
  else fail(ErrorCode::invalid_config, "budget.mode must be 'nodes' or 'time'");
  search::validate(out);
  return out;
}

double parse_exploration(const std::string& text) {
  if (starts_with(text, "sqrt2")) {
    const auto rest = text.substr(5);
    if (rest.empty()) return std::sqrt(2.0);
    if (rest[0] != '/') fail(ErrorCode::invalid_config, "bad exploration constant '" + text + "'");
    return std::sqrt(2.0) / parse_exploration(rest.substr(1));
  }
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !(value >= 0))
    fail(ErrorCode::invalid_config, "bad exploration constant '" + text + "'");
  return value;
}

void validate_algorithm(const std::string& a) {
  if (a == "umaxn" || a == "umaxn-safe" || a == "maxn" || a == "paranoid" || a == "brs" || a == "brs+" || a == "random") return;
  if (starts_with(a, "kbest:")) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(a.substr(6), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != a.size() - 6 || k < 1) fail(ErrorCode::invalid_config, "bad k in '" + a + "'");
    return;
  }
  if (starts_with(a, "mcts:")) return (void)parse_exploration(a.substr(5));
  if (starts_with(a, "mctsh:")) return (void)parse_exploration(a.substr(6));
  fail(ErrorCode::invalid_config, "unknown algorithm '" + a + "'");
}

std::unique_ptr<Agent> make_agent(const GamePtr& game, const AgentSpec& spec) {
  validate_algorithm(spec.algorithm);
  search::validate(spec.budget);
  const auto& a = spec.algorithm;
  if (a == "random") return std::make_unique<RandomAgent>(game);
  auto evaluator = eval::make_evaluator(game, spec.evaluator_id(*game));
  if (a == "umaxn" || a == "umaxn-safe")
    return std::make_unique<UnboundedAgent>(game, evaluator, spec.budget,
                                            a == "umaxn" ? search::Decision::best : search::Decision::safe);
  if (starts_with(a, "mcts:")) return std::make_unique<MctsAgent>(game, nullptr, spec.budget, parse_exploration(a.substr(5)));
  if (starts_with(a, "mctsh:"))
    return std::make_unique<MctsAgent>(game, normalized(game, evaluator), spec.budget, parse_exploration(a.substr(6)));
  search::DepthOptions options;
  search::DepthAlgorithm algorithm = search::DepthAlgorithm::maxn;
  if (starts_with(a, "kbest:")) {
    algorithm = search::DepthAlgorithm::kbest;
    options.k = std::stoi(a.substr(6));
  } else if (a == "paranoid") {
    algorithm = search::DepthAlgorithm::paranoid;
  } else if (a == "brs") {
    algorithm = search::DepthAlgorithm::brs;
  } else if (a == "brs+") {
    algorithm = search::DepthAlgorithm::brs_plus;
  }
  return std::make_unique<DepthAgent>(game, evaluator, spec.budget, algorithm, options);
}

}  // namespace mps::harness

#include "harness/match.hpp"

#include <chrono>

#include "eval/evaluator.hpp"

namespace mps::harness {
namespace {

nlohmann::json payoff_json(const PayoffVector& v) { return std::vector<double>(v.begin(), v.end()); }

PayoffVector payoff_from_json(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  if (values.empty()) return {};
  PayoffVector out(static_cast<int>(values.size()));
  for (std::size_t p = 0; p < values.size(); ++p) out[static_cast<int>(p)] = values[p];
  return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t state = seed;
  std::uint64_t out = eval::splitmix64(state);
  for (std::uint64_t x : {a, b, c}) {
    state ^= x + 0x632be59bd9b4e019ULL;
    out ^= eval::splitmix64(state);
  }
  return out;
}

nlohmann::json to_json(const MatchRecord& r) {
  return {{"key", r.key},
          {"game", r.game},
          {"config", r.config},
          {"algorithm", r.algorithm},
          {"seat", r.seat},
          {"i", r.i},
          {"j", r.j},
          {"agents", r.agents},
          {"evaluators", r.evaluators},
          {"moves", r.moves},
          {"move_seconds", r.move_seconds},
          {"scores", payoff_json(r.scores)},
          {"outcome", payoff_json(r.outcome)},
          {"status", r.status},
          {"forfeiter", r.forfeiter},
          {"forfeit_action", r.forfeit_action},
          {"failure", r.failure},
          {"seed", r.seed}};
}

MatchRecord record_from_json(const nlohmann::json& j) {
  MatchRecord r;
  try {
    r.key = j.at("key").get<std::string>();
    r.game = j.at("game").get<std::string>();
    r.config = j.at("config");
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seat = j.at("seat").get<int>();
    r.i = j.at("i").get<int>();
    r.j = j.at("j").get<int>();
    r.agents = j.at("agents").get<std::vector<std::string>>();
    r.evaluators = j.at("evaluators").get<std::vector<int>>();
    r.moves = j.at("moves").get<std::vector<std::int32_t>>();
    r.move_seconds = j.at("move_seconds").get<std::vector<double>>();
    r.scores = payoff_from_json(j.at("scores"));
    r.outcome = payoff_from_json(j.at("outcome"));
    r.status = j.at("status").get<std::string>();
    r.forfeiter = j.at("forfeiter").get<int>();
    r.forfeit_action = j.at("forfeit_action").get<std::int32_t>();
    r.failure = j.at("failure").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("bad match record: ") + e.what());
  }
  return r;
}

MatchRecord play_match(const GamePtr& game, const std::vector<AgentSpec>& agents, std::uint64_t seed) {
  const int players = game->num_players();
  if (static_cast<int>(agents.size()) != players)
    fail(ErrorCode::invalid_config, "a " + game->name() + " match needs " + std::to_string(players) + " agents");
  MatchRecord record;
  record.game = game->name();
  record.config = game->config();
  record.seed = seed;
  std::vector<std::unique_ptr<Agent>> seats;
  for (const auto& spec : agents) {
    record.agents.push_back(spec.algorithm);
    record.evaluators.push_back(spec.evaluator);
    seats.push_back(make_agent(game, spec));
  }
  State s = game->initial_state();
  std::uint64_t ply = 0;
  while (!game->is_terminal(s)) {
    const PlayerId p = game->current_player(s);
    const auto start = std::chrono::steady_clock::now();
    Action a{};
    try {
      a = seats[static_cast<std::size_t>(p)]->choose(s, mix_seed(seed, ply, static_cast<std::uint64_t>(p)));
      record.move_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      s = game->apply(s, a);
    } catch (const Error& e) {
      record.status = "forfeit";
      record.forfeiter = p;
      record.forfeit_action = a.code;
      record.failure = e.what();
      return record;
    }
    record.moves.push_back(a.code);
    ++ply;
  }
  record.scores = game->terminal_payoff(s);
  record.outcome = game->win_loss_vector(s);
  return record;
}

bool replay(const Game& game, const MatchRecord& record) {
  try {
    State s = game.initial_state();
    for (auto code : record.moves) s = game.apply(s, Action{code});
    if (record.status == "forfeit") {
      if (game.is_terminal(s)) return false;
      try {
        game.apply(s, Action{record.forfeit_action});
      } catch (const Error&) {
        return true;
      }
      // A legal recorded action means the agent failed some other way.
      return !record.failure.empty();
    }
    return game.is_terminal(s) && game.terminal_payoff(s) == record.scores && game.win_loss_vector(s) == record.outcome;
  } catch (const Error&) {
    return false;
  }
}

int binary_score(const MatchRecord& record, PlayerId player) {
  if (record.status == "forfeit") return player == record.forfeiter ? -1 : 1;
  const double v = record.outcome[player];
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace mps::harness

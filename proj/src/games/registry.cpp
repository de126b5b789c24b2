#include "games/registry.hpp"

#include <set>

#include "games/hex_games.hpp"
#include "games/hey_fish.hpp"
#include "games/othello_games.hpp"
#include "games/quadamazons.hpp"
#include "games/toy_games.hpp"

namespace mps::games {
namespace {

class ConfigReader {
 public:
  ConfigReader(const std::string& game, const nlohmann::json& config) : game_(game), config_(config) {
    if (!config_.is_null() && !config_.is_object()) fail(ErrorCode::invalid_config, game + ": config must be an object");
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (config_.is_null() || !config_.contains(key)) return fallback;
    try {
      return config_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::invalid_config, game_ + ": bad value for '" + key + "': " + e.what());
    }
  }

  void finish() const {
    if (config_.is_null()) return;
    for (const auto& [key, value] : config_.items())
      if (!used_.count(key)) fail(ErrorCode::invalid_config, game_ + ": unknown config key '" + key + "'");
  }

 private:
  std::string game_;
  const nlohmann::json& config_;
  std::set<std::string> used_;
};

}  // namespace

const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names{"three_player_hex", "threehex", "separed_teamhex", "quadamazons",
                                              "quadrothello", "triinversion", "hey_fish", "trinim", "bandit"};
  return names;
}

GamePtr make_game(const std::string& name, const nlohmann::json& config) {
  ConfigReader in(name, config);
  GamePtr game;
  if (name == "three_player_hex") {
    game = std::make_shared<ThreePlayerHex>(in.get("side", 7));
  } else if (name == "threehex") {
    game = std::make_shared<Threehex>(in.get("side", 7));
  } else if (name == "separed_teamhex") {
    game = std::make_shared<SeparedTeamhex>(in.get("N", 20));
  } else if (name == "quadamazons") {
    const int n = in.get("N", 14);
    game = std::make_shared<Quadamazons>(n, in.get("d", 2));
  } else if (name == "quadrothello") {
    game = std::make_shared<Quadrothello>(in.get("N", 14));
  } else if (name == "triinversion") {
    game = std::make_shared<Triinversion>(in.get("l", 6));
  } else if (name == "hey_fish") {
    HeyFishConfig c;
    c.rows = in.get("rows", c.rows);
    c.cols = in.get("cols", c.cols);
    c.players = in.get("players", c.players);
    c.penguins = in.get("penguins", c.penguins);
    c.seed = in.get("seed", c.seed);
    c.fish = in.get("fish", c.fish);
    game = std::make_shared<HeyFish>(c);
  } else if (name == "trinim") {
    const auto heaps = in.get("heaps", std::vector<int>{2, 3, 4});
    game = std::make_shared<TriNim>(heaps, in.get("players", 3));
  } else if (name == "bandit") {
    game = std::make_shared<Bandit>(in.get("table", Bandit::default_table()));
  } else {
    fail(ErrorCode::unsupported_game, "unsupported game '" + name + "'");
  }
  in.finish();
  return game;
}

std::uint64_t perft(const Game& game, const State& s, int depth) {
  if (depth <= 0) return 1;
  if (game.is_terminal(s)) return 0;
  const auto actions = game.legal_actions(s);
  if (depth == 1) return actions.size();
  std::uint64_t total = 0;
  for (Action a : actions) total += perft(game, game.apply_unchecked(s, a), depth - 1);
  return total;
}

bool connection_check(const Game& game, const State& s, int who, bool team) {
  if (const auto* g = dynamic_cast<const ThreePlayerHex*>(&game)) {
    if (team || who < 0 || who >= 3) fail(ErrorCode::contract_violation, "three_player_hex: player out of range");
    return g->connected(s, who);
  }
  if (const auto* g = dynamic_cast<const Threehex*>(&game)) {
    if (team || who < 0 || who >= 3) fail(ErrorCode::contract_violation, "threehex: player out of range");
    return g->connected(s, who);
  }
  if (const auto* g = dynamic_cast<const SeparedTeamhex*>(&game)) {
    if (who < 0 || who >= (team ? 2 : 4)) fail(ErrorCode::contract_violation, "separed_teamhex: index out of range");
    return team ? g->team_connection(s, who) : g->strong_connection(s, who);
  }
  fail(ErrorCode::unsupported_game, game.name() + " is not a connection game");
}

}  // namespace mps::games

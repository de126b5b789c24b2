#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/game.hpp"

namespace mps::games {

// Game identifiers accepted by make_game.
const std::vector<std::string>& game_names();

// Builds a game from its identifier and a JSON config object (null or {} for
// defaults). Unknown keys and invalid sizes raise invalid_config; unknown
// names raise unsupported_game.
GamePtr make_game(const std::string& name, const nlohmann::json& config = nlohmann::json::object());

// Number of action paths of exactly `depth` plies from `s`.
std::uint64_t perft(const Game& game, const State& s, int depth);

// True iff `who` (a player, or a team when `team` is set) links its goal
// edges. Hex-family games only.
bool connection_check(const Game& game, const State& s, int who, bool team = false);

}  // namespace mps::games

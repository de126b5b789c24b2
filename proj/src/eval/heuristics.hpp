#pragma once

#include <functional>

#include "eval/evaluator.hpp"
#include "games/hex_grid.hpp"

namespace mps::eval {

// Weighted sum of per-player features, each taken as a differential against
// the mean of the other players. Variant v > 0 scales every weight by a
// seeded factor in [0.5, 1.5]; variant 0 keeps the base weights.
class HeuristicEvaluator final : public Evaluator {
 public:
  struct Feature {
    std::string name;
    double weight;
    // Writes one raw value per player.
    std::function<void(const State&, double*)> measure;
  };

  HeuristicEvaluator(GamePtr game, std::vector<Feature> features, int variant);

  const std::vector<Feature>& features() const { return features_; }

 protected:
  PayoffVector compute(const State& s) const override;

 private:
  std::vector<Feature> features_;
};

// Handcrafted evaluator for a shipped game; unsupported_game otherwise.
EvaluatorPtr builtin_heuristic(const GamePtr& game, int variant = 0);

// Fewest cells still to fill to link `from` to `to`. cost[c] is 0 for owned
// cells, 1 for playable ones and -1 for blocked ones. Unreachable gives
// cell count + 1.
int connection_distance(const games::HexGraph& graph, const std::vector<std::int8_t>& cost,
                        const std::vector<bool>& from, const std::vector<bool>& to);

}  // namespace mps::eval

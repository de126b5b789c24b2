#include "eval/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mps::eval {

void validate(const NormalizationBounds& bounds) {
  if (bounds.m.size() != bounds.M.size() || bounds.m.size() == 0)
    fail(ErrorCode::invalid_bounds, "normalization bounds must have one m and one M per player");
  for (int p = 0; p < bounds.m.size(); ++p)
    if (!(bounds.m[p] < bounds.M[p]) || !std::isfinite(bounds.m[p]) || !std::isfinite(bounds.M[p]))
      fail(ErrorCode::invalid_bounds, "normalization bounds need m < M, component " + std::to_string(p) + " has m = " +
                                          std::to_string(bounds.m[p]) + ", M = " + std::to_string(bounds.M[p]));
}

double normalize_value(double f, double m, double M) { return (std::max(std::min(f, M), m) - m) / (M - m); }

NormalizedEvaluator::NormalizedEvaluator(EvaluatorPtr inner, NormalizationBounds bounds)
    : Evaluator(inner->game_ptr(), inner->id() + ":normalized"), inner_(std::move(inner)), bounds_(std::move(bounds)) {
  validate(bounds_);
  if (bounds_.m.size() != game().num_players())
    fail(ErrorCode::invalid_bounds, "normalization bounds do not match the player count");
}

PayoffVector NormalizedEvaluator::rescale(const PayoffVector& raw) const {
  PayoffVector out(raw.size());
  for (int p = 0; p < raw.size(); ++p) out[p] = normalize_value(raw[p], bounds_.m[p], bounds_.M[p]);
  return out;
}

PayoffVector NormalizedEvaluator::compute(const State& s) const { return rescale(inner_->evaluate(s)); }

void NormalizedEvaluator::compute_batch(const std::vector<State>& states, std::vector<PayoffVector>& out) const {
  for (const auto& raw : inner_->evaluate_batch(states)) out.push_back(rescale(raw));
}

EvaluatorPtr normalize(EvaluatorPtr inner, const NormalizationBounds& bounds) {
  return std::make_shared<NormalizedEvaluator>(std::move(inner), bounds);
}

Action uniform_policy(const Game& game, const State& s, std::mt19937_64& rng) {
  const auto actions = game.legal_actions(s);
  return actions[rng() % actions.size()];
}

Calibration calibrate_bounds(const Evaluator& evaluator, const Policy& policy, int matches, std::uint64_t seed) {
  if (matches < 1) fail(ErrorCode::invalid_config, "calibration needs at least one match");
  const Game& game = evaluator.game();
  const int players = game.num_players();
  Calibration out;
  out.bounds.m = PayoffVector(players, std::numeric_limits<double>::infinity());
  out.bounds.M = PayoffVector(players, -std::numeric_limits<double>::infinity());
  out.min_witness.resize(static_cast<std::size_t>(players));
  out.max_witness.resize(static_cast<std::size_t>(players));
  std::uint64_t stream = seed;
  for (int match = 0; match < matches; ++match) {
    std::mt19937_64 rng(splitmix64(stream));
    State s = game.initial_state();
    while (!game.is_terminal(s)) {
      const auto v = evaluator.evaluate(s);
      ++out.samples;
      for (PlayerId p = 0; p < players; ++p) {
        if (v[p] < out.bounds.m[p]) {
          out.bounds.m[p] = v[p];
          out.min_witness[static_cast<std::size_t>(p)] = s;
        }
        if (v[p] > out.bounds.M[p]) {
          out.bounds.M[p] = v[p];
          out.max_witness[static_cast<std::size_t>(p)] = s;
        }
      }
      s = game.apply(s, policy(game, s, rng));
    }
  }
  validate(out.bounds);
  return out;
}

}  // namespace mps::eval

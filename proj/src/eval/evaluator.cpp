#include "eval/evaluator.hpp"

#include <charconv>

#include "eval/heuristics.hpp"

namespace mps::eval {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PayoffVector Evaluator::evaluate(const State& s) const {
  if (s.terminal) fail(ErrorCode::contract_violation, id_ + ": evaluate called on a terminal state");
  return compute(s);
}

std::vector<PayoffVector> Evaluator::evaluate_batch(const std::vector<State>& states) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].terminal)
      fail(ErrorCode::contract_violation, id_ + ": evaluate_batch got a terminal state at index " + std::to_string(i));
  std::vector<PayoffVector> out;
  out.reserve(states.size());
  compute_batch(states, out);
  return out;
}

void Evaluator::compute_batch(const std::vector<State>& states, std::vector<PayoffVector>& out) const {
  for (const auto& s : states) out.push_back(compute(s));
}

ZeroEvaluator::ZeroEvaluator(GamePtr game) : Evaluator(game, game->name() + ":zero:0") {}

PayoffVector ZeroEvaluator::compute(const State&) const { return PayoffVector(game().num_players()); }

NoiseEvaluator::NoiseEvaluator(GamePtr game, int variant)
    : Evaluator(game, game->name() + ":noise:" + std::to_string(variant)),
      salt_(0x6e6f697365000000ULL + static_cast<std::uint64_t>(variant)) {}

PayoffVector NoiseEvaluator::compute(const State& s) const {
  PayoffVector v(game().num_players());
  std::uint64_t state = s.key ^ salt_;
  for (PlayerId p = 0; p < v.size(); ++p)
    v[p] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;
  return v;
}

EvaluatorPtr make_evaluator(const GamePtr& game, const std::string& id) {
  const auto first = id.find(':');
  const auto second = id.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    fail(ErrorCode::invalid_config, "evaluator id '" + id + "' is not <game>:<family>:<variant>");
  const auto game_name = id.substr(0, first);
  const auto family = id.substr(first + 1, second - first - 1);
  const auto index = id.substr(second + 1);
  if (game_name != game->name())
    fail(ErrorCode::invalid_config, "evaluator id '" + id + "' does not match game " + game->name());
  int variant = -1;
  auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), variant);
  if (ec != std::errc{} || ptr != index.data() + index.size() || variant < 0)
    fail(ErrorCode::invalid_config, "evaluator id '" + id + "' has a bad variant index");
  if (family == "zero") return std::make_shared<ZeroEvaluator>(game);
  if (family == "noise") return std::make_shared<NoiseEvaluator>(game, variant);
  if (family == "heuristic") return builtin_heuristic(game, variant);
  fail(ErrorCode::invalid_config, "unknown evaluator family '" + family + "'");
}

}  // namespace mps::eval

#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "eval/evaluator.hpp"

namespace mps::eval {

struct NormalizationBounds {
  PayoffVector m;  // minimum practical value per component
  PayoffVector M;  // maximum practical value per component
};

// Throws invalid_bounds unless m < M component-wise.
void validate(const NormalizationBounds& bounds);

// f_n(s) = (max(min(f(s), M), m) - m) / (M - m), per component.
double normalize_value(double f, double m, double M);

class NormalizedEvaluator final : public Evaluator {
 public:
  NormalizedEvaluator(EvaluatorPtr inner, NormalizationBounds bounds);
  const NormalizationBounds& bounds() const { return bounds_; }

 protected:
  PayoffVector compute(const State& s) const override;
  void compute_batch(const std::vector<State>& states, std::vector<PayoffVector>& out) const override;

 private:
  PayoffVector rescale(const PayoffVector& raw) const;
  EvaluatorPtr inner_;
  NormalizationBounds bounds_;
};

EvaluatorPtr normalize(EvaluatorPtr inner, const NormalizationBounds& bounds);

// Picks the move to play during calibration matches.
using Policy = std::function<Action(const Game&, const State&, std::mt19937_64&)>;

Action uniform_policy(const Game& game, const State& s, std::mt19937_64& rng);

struct Calibration {
  NormalizationBounds bounds;
  // States reaching the per-component minimum and maximum.
  std::vector<State> min_witness;
  std::vector<State> max_witness;
  std::size_t samples = 0;
};

// Component-wise extremes of `evaluator` over every non-terminal state of
// `matches` self-play games driven by `policy`. Deterministic given `seed`.
Calibration calibrate_bounds(const Evaluator& evaluator, const Policy& policy, int matches, std::uint64_t seed);

}  // namespace mps::eval

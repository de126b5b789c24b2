#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/game.hpp"

namespace mps::eval {

// Deterministic heuristic f: non-terminal state -> one value per player.
// Identifiers read "<game>:<family>:<variant>".
class Evaluator {
 public:
  Evaluator(GamePtr game, std::string id) : game_(std::move(game)), id_(std::move(id)) {}
  virtual ~Evaluator() = default;

  const Game& game() const { return *game_; }
  const GamePtr& game_ptr() const { return game_; }
  const std::string& id() const { return id_; }

  PayoffVector evaluate(const State& s) const;
  // Order-preserving; equal to evaluate() on each element.
  std::vector<PayoffVector> evaluate_batch(const std::vector<State>& states) const;

 protected:
  virtual PayoffVector compute(const State& s) const = 0;
  virtual void compute_batch(const std::vector<State>& states, std::vector<PayoffVector>& out) const;

 private:
  GamePtr game_;
  std::string id_;
};

using EvaluatorPtr = std::shared_ptr<const Evaluator>;

class ZeroEvaluator final : public Evaluator {
 public:
  explicit ZeroEvaluator(GamePtr game);

 protected:
  PayoffVector compute(const State& s) const override;
};

// Pseudo-random values in [-1, 1] derived from the state key; a cheap,
// structureless evaluator for search differential tests.
class NoiseEvaluator final : public Evaluator {
 public:
  NoiseEvaluator(GamePtr game, int variant);

 protected:
  PayoffVector compute(const State& s) const override;

 private:
  std::uint64_t salt_;
};

// Families: "zero", "noise", "heuristic". The game part must match game->name().
EvaluatorPtr make_evaluator(const GamePtr& game, const std::string& id);

// Variants per family used by the tournament protocol.
inline constexpr int kVariants = 30;

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace mps::eval

#include "core/payoff.hpp"

#include <algorithm>
#include <sstream>

#include "core/errors.hpp"

namespace mps {

PayoffVector::PayoffVector(int players, double fill) : size_(players) {
  if (players < 1 || players > kMaxPlayers)
    fail(ErrorCode::contract_violation, "payoff vector size out of range: " + std::to_string(players));
  values_.fill(fill);
}

PayoffVector::PayoffVector(std::initializer_list<double> values)
    : size_(static_cast<int>(values.size())) {
  if (size_ < 1 || size_ > kMaxPlayers)
    fail(ErrorCode::contract_violation, "payoff vector size out of range: " + std::to_string(size_));
  std::copy(values.begin(), values.end(), values_.begin());
}

std::string to_string(const PayoffVector& v) {
  std::ostringstream out;
  out << '(';
  for (int p = 0; p < v.size(); ++p) {
    if (p) out << ", ";
    out << v[p];
  }
  out << ')';
  return out.str();
}

PayoffVector win_loss_from_scores(const PayoffVector& scores) {
  const double best = *std::max_element(scores.begin(), scores.end());
  int winners = 0;
  for (double s : scores)
    if (s == best) ++winners;
  PayoffVector out(scores.size(), 0.0);
  if (winners == scores.size()) return out;
  for (int p = 0; p < scores.size(); ++p) out[p] = scores[p] == best ? 1.0 : -1.0;
  return out;
}

}  // namespace mps

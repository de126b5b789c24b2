#include "harness/bootstrap.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "core/errors.hpp"

namespace mps::harness {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) fail(ErrorCode::contract_violation, "quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Interval stratified_bootstrap(const std::vector<Observation>& observations, int resamples, std::uint64_t seed,
                              double level) {
  if (resamples < 1) fail(ErrorCode::invalid_config, "bootstrap needs at least one resample");
  if (!(level > 0 && level < 1)) fail(ErrorCode::invalid_config, "confidence level must be in (0, 1)");
  std::map<std::string, std::vector<double>> strata;
  for (const auto& o : observations) strata[o.stratum].push_back(o.score);
  Interval out;
  if (strata.empty()) fail(ErrorCode::invalid_config, "bootstrap over an empty sample");
  double total = 0;
  for (auto& [_, values] : strata) {
    std::sort(values.begin(), values.end());
    for (double v : values) total += v;
    out.n += values.size();
  }
  out.strata = strata.size();
  out.mean = total / static_cast<double>(out.n);
  std::mt19937_64 rng(seed);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    double sum = 0;
    for (const auto& [_, values] : strata)
      for (std::size_t k = 0; k < values.size(); ++k) sum += values[rng() % values.size()];
    m = sum / static_cast<double>(out.n);
  }
  std::sort(means.begin(), means.end());
  const double tail = (1 - level) / 2;
  out.lower = std::min(quantile(means, tail), out.mean);
  out.upper = std::max(quantile(means, 1 - tail), out.mean);
  return out;
}

}  // namespace mps::harness

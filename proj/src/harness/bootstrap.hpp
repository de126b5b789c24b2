#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mps::harness {

struct Observation {
  std::string stratum;
  double score = 0;
};

struct Interval {
  double mean = 0;
  double lower = 0;
  double upper = 0;
  std::size_t n = 0;
  std::size_t strata = 0;
};

// Percentile stratified bootstrap: every resample redraws each stratum with
// replacement at its own size. Invariant to the order of `observations`.
Interval stratified_bootstrap(const std::vector<Observation>& observations, int resamples, std::uint64_t seed,
                              double level = 0.95);

// Linear-interpolated quantile of sorted values.
double quantile(const std::vector<double>& sorted, double q);

}  // namespace mps::harness

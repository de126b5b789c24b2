#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>

namespace mps {

inline constexpr int kMaxPlayers = 4;

// Index of a seat in [0, P).
using PlayerId = int;

// One real value per player. Fixed capacity so search entries never allocate.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(int players, double fill = 0.0);
  PayoffVector(std::initializer_list<double> values);

  int size() const noexcept { return size_; }
  double& operator[](int p) noexcept { return values_[static_cast<std::size_t>(p)]; }
  double operator[](int p) const noexcept { return values_[static_cast<std::size_t>(p)]; }

  double* begin() noexcept { return values_.data(); }
  double* end() noexcept { return values_.data() + size_; }
  const double* begin() const noexcept { return values_.data(); }
  const double* end() const noexcept { return values_.data() + size_; }

  friend bool operator==(const PayoffVector& a, const PayoffVector& b) noexcept {
    if (a.size_ != b.size_) return false;
    for (int p = 0; p < a.size_; ++p)
      if (a[p] != b[p]) return false;
    return true;
  }

 private:
  std::array<double, kMaxPlayers> values_{};
  int size_ = 0;
};

std::string to_string(const PayoffVector& v);

// Win/loss vector from a score vector: every player holding the maximum score
// wins (+1) and the rest lose (-1); an all-way tie is a draw (all 0).
PayoffVector win_loss_from_scores(const PayoffVector& scores);

}  // namespace mps

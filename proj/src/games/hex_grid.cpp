#include "games/hex_grid.hpp"

#include <cstdlib>

namespace mps::games {

HexHexGrid::HexHexGrid(int side) : side_(side) {
  const int R = side - 1;
  const int width = 2 * R + 1;
  lookup_.assign(static_cast<std::size_t>(width * width), -1);
  for (int r = -R; r <= R; ++r)
    for (int q = -R; q <= R; ++q) {
      if (std::abs(q + r) > R) continue;
      lookup_[static_cast<std::size_t>((r + R) * width + (q + R))] = static_cast<int>(coords_.size());
      coords_.push_back({q, r});
    }
  const auto n = coords_.size();
  graph_.neighbors.resize(n);
  for (auto& e : edges_) e.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [q, r] = coords_[i];
    for (std::size_t d = 0; d < 6; ++d) graph_.neighbors[i][d] = index(q + kDirections[d][0], r + kDirections[d][1]);
    const int axes[3] = {q, r, -q - r};
    for (int a = 0; a < 3; ++a) {
      if (axes[a] == -R) edges_[static_cast<std::size_t>(a * 2)][i] = true;
      if (axes[a] == R) edges_[static_cast<std::size_t>(a * 2 + 1)][i] = true;
    }
  }
}

int HexHexGrid::index(int q, int r) const {
  const int R = side_ - 1;
  if (std::abs(q) > R || std::abs(r) > R || std::abs(q + r) > R) return -1;
  const int width = 2 * R + 1;
  return lookup_[static_cast<std::size_t>((r + R) * width + (q + R))];
}

RhombusGrid::RhombusGrid(int n) : n_(n) {
  static constexpr int kOffsets[6][2] = {{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}};
  graph_.neighbors.resize(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < 6; ++d) {
        const int rr = r + kOffsets[d][0], cc = c + kOffsets[d][1];
        graph_.neighbors[static_cast<std::size_t>(r * n + c)][static_cast<std::size_t>(d)] =
            (rr < 0 || rr >= n || cc < 0 || cc >= n) ? -1 : rr * n + cc;
      }
}

}  // namespace mps::games

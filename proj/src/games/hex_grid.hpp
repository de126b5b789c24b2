#pragma once

#include <array>
#include <vector>

namespace mps::games {

// Cell graph with up to six neighbours per cell (-1 for none) and named
// boundary segments, shared by the hex-family rule engines.
struct HexGraph {
  std::vector<std::array<int, 6>> neighbors;

  int size() const { return static_cast<int>(neighbors.size()); }

  // True iff a component of cells satisfying `owned` touches both a cell with
  // from[i] and a cell with to[i].
  template <class Owned>
  bool connects(const Owned& owned, const std::vector<bool>& from, const std::vector<bool>& to) const {
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int c = 0; c < n; ++c)
      if (from[static_cast<std::size_t>(c)] && owned(c)) {
        seen[static_cast<std::size_t>(c)] = 1;
        stack.push_back(c);
      }
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      if (to[static_cast<std::size_t>(c)]) return true;
      for (int nb : neighbors[static_cast<std::size_t>(c)]) {
        if (nb < 0 || seen[static_cast<std::size_t>(nb)] || !owned(nb)) continue;
        seen[static_cast<std::size_t>(nb)] = 1;
        stack.push_back(nb);
      }
    }
    return false;
  }
};

// Hexagon-shaped board of side `side` in axial coordinates (q, r), cells
// numbered row-major by r then q. Each of the three axes (q, r, -q-r) has a
// low edge (coordinate -R) and a high edge (+R), R = side - 1.
class HexHexGrid {
 public:
  explicit HexHexGrid(int side);

  int side() const { return side_; }
  int cell_count() const { return static_cast<int>(coords_.size()); }
  int index(int q, int r) const;
  std::array<int, 2> coord(int cell) const { return coords_[static_cast<std::size_t>(cell)]; }
  const HexGraph& graph() const { return graph_; }
  // Cells on the low (high) edge of `axis`.
  const std::vector<bool>& edge(int axis, bool high) const { return edges_[static_cast<std::size_t>(axis * 2 + (high ? 1 : 0))]; }
  int center() const { return index(0, 0); }

  // Axial unit directions in rotational order; direction k and k+3 are opposite.
  static constexpr std::array<std::array<int, 2>, 6> kDirections{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

 private:
  int side_;
  std::vector<std::array<int, 2>> coords_;
  std::vector<int> lookup_;
  HexGraph graph_;
  std::array<std::vector<bool>, 6> edges_;
};

// N x N rhombus (two-player Hex board); cell = row * N + col.
class RhombusGrid {
 public:
  explicit RhombusGrid(int n);
  int n() const { return n_; }
  const HexGraph& graph() const { return graph_; }

 private:
  int n_;
  HexGraph graph_;
};

}  // namespace mps::games

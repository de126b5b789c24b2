#include <cstddef>

#include "core/game.hpp"

namespace mps {
namespace {

// Fixed seed for every Zobrist table; keys are reproducible across runs and
// builds.
constexpr std::uint64_t kZobristSeed = 0x6d70732d7a6f6272ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Table of random words indexed by (cell, value), generated up front for the
// common sizes and by formula beyond them.
struct CellTable {
  static constexpr std::size_t kCells = 512;
  static constexpr std::size_t kValues = 16;
  std::uint64_t words[kCells * kValues];

  constexpr CellTable() : words{} {
    for (std::size_t i = 0; i < kCells * kValues; ++i) words[i] = splitmix64(kZobristSeed ^ (i * 0x100000001b3ULL));
  }
};

const CellTable& cell_table() {
  static const CellTable table;
  return table;
}

std::uint64_t cell_word(std::size_t cell, int value) {
  const auto v = static_cast<std::size_t>(value & 0xff);
  if (cell < CellTable::kCells && v < CellTable::kValues) return cell_table().words[cell * CellTable::kValues + v];
  return splitmix64(kZobristSeed + 0x51ed270b27a4f1d3ULL * (cell + 1) + v);
}

std::uint64_t extra_word(std::size_t slot, std::int32_t value) {
  return splitmix64(splitmix64(kZobristSeed ^ (0xa24baed4963ee407ULL * (slot + 1))) ^
                    static_cast<std::uint32_t>(value));
}

}  // namespace

ZobristKey hash_state(const State& s) {
  ZobristKey key = splitmix64(kZobristSeed + 0x1000 + static_cast<std::uint64_t>(s.mover));
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    if (s.cells[i] != 0) key ^= cell_word(i, s.cells[i]);
  for (std::size_t j = 0; j < s.extra.size(); ++j) key ^= extra_word(j, s.extra[j]);
  return key;
}

}  // namespace mps

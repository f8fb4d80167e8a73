#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string_view>

namespace fortsim {

/// Grid coordinate: x grows east, y grows north.
struct Cell {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
};

/// Reading order: north-most row first, then west to east.
struct ReadingOrder {
  constexpr bool operator()(const Cell& a, const Cell& b) const {
    if (a.y != b.y) return a.y > b.y;
    return a.x < b.x;
  }
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    auto h = static_cast<std::uint64_t>(c.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(c.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

constexpr std::int64_t manhattan(Cell a, Cell b) {
  const auto dx = a.x - b.x;
  const auto dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

constexpr std::int64_t norm1(Cell offset) { return manhattan(offset, Cell{}); }

enum class Heading : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Heading, 4> kCompass = {Heading::North, Heading::East, Heading::South,
                                                    Heading::West};

constexpr Heading turn_right(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}
constexpr Heading turn_left(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}
constexpr Heading turn_around(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 2) % 4);
}

constexpr Cell unit(Heading h) {
  switch (h) {
    case Heading::North: return {0, 1};
    case Heading::East: return {1, 0};
    case Heading::South: return {0, -1};
    case Heading::West: return {-1, 0};
  }
  return {};
}

constexpr std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::North: return "N";
    case Heading::East: return "E";
    case Heading::South: return "S";
    case Heading::West: return "W";
  }
  return "?";
}

/// Cells adjacent in the four compass directions, in N, E, S, W order.
constexpr std::array<Cell, 4> neighbours(Cell c) {
  return {c + unit(Heading::North), c + unit(Heading::East), c + unit(Heading::South),
          c + unit(Heading::West)};
}

}  // namespace fortsim

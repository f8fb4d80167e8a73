#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fortsim/grid.hpp"

namespace fortsim {

/// The fort as the controller knows it: a hollow rectangle whose north-west
/// corner is the first cell, plus the single corner appendage of a rough
/// fort. Stage-0 forts (1..3 bricks) are degenerate rectangles.
class FortShape {
 public:
  FortShape(Cell first_cell, Cell se_corner, std::optional<Cell> appendage);

  /// Shape implied by the construction registers: `counter` is the value
  /// that selects the next extension.
  static FortShape from_registers(Cell first_cell, Cell se_corner, int stage, int counter);

  bool contains(Cell c) const;
  /// Manhattan distance to the nearest fort cell.
  std::int64_t distance(Cell c) const;

  /// First direction (N, E, S, W) in which the distance to the rectangle
  /// grows; inside it, the direction of the closest side. Used to push swept
  /// bricks away.
  Heading outward(Cell c) const;

  /// Fort cells in counterclockwise order from the first cell (down the west
  /// wall first). Consecutive entries are 4-adjacent; the last entry is
  /// adjacent to the first cell. Degenerate rectangles are walked out and back.
  std::vector<Cell> perimeter_walk() const;

  std::vector<Cell> cells() const;
  std::size_t size() const;

  Cell first_cell() const { return nw_; }
  Cell se_corner() const { return se_; }
  std::optional<Cell> appendage() const { return appendage_; }

 private:
  std::int64_t rect_distance(Cell c) const;

  Cell nw_;
  Cell se_;
  std::optional<Cell> appendage_;
};

}  // namespace fortsim

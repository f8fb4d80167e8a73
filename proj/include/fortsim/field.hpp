#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fortsim/grid.hpp"

namespace fortsim {

/// Thrown for queries that have no meaning on the given input (empty span,
/// overlapping components, out-of-range generator parameters).
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The finite set of full cells on the otherwise empty infinite grid.
class Field {
 public:
  Field() = default;
  Field(std::initializer_list<Cell> cells);
  explicit Field(const std::vector<Cell>& cells);

  bool contains(Cell c) const { return cells_.contains(c); }
  /// Returns false if the cell was already full.
  bool insert(Cell c) { return cells_.insert(c).second; }
  /// Returns false if the cell was already empty.
  bool erase(Cell c) { return cells_.erase(c) > 0; }

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  /// Cells in reading order (deterministic).
  std::vector<Cell> sorted_cells() const;

  int full_neighbour_count(Cell c) const;

  friend bool operator==(const Field& a, const Field& b) { return a.cells_ == b.cells_; }

 private:
  std::unordered_set<Cell, CellHash> cells_;
};

/// A maximal 4-connected set of full cells, stored in reading order.
struct Component {
  std::vector<Cell> cells;

  Cell representative() const { return cells.front(); }
  std::size_t size() const { return cells.size(); }
  bool contains(Cell c) const;
};

struct Box {
  std::int64_t min_x, max_x, min_y, max_y;
};

std::optional<Box> bounding_box(const Field& f);

/// Maximum pairwise Manhattan distance. Throws FieldError("undefined span") on an empty field.
std::int64_t span(const Field& f);
std::int64_t span(const std::vector<Cell>& cells);

/// Components ordered by their top-most then left-most cell.
std::vector<Component> components(const Field& f);

bool is_connected(const Field& f);
bool is_connected(const std::vector<Cell>& cells);

/// Minimum Manhattan distance between two disjoint, nonempty components.
std::int64_t min_distance(const Component& a, const Component& b);

/// Filled Manhattan ball of radius r around the origin, plus z - (2r^2+2r+1)
/// cells at distance r+1 placed contiguously clockwise starting from a
/// seed-selected position on that ring (seed 0 starts due north).
Field gen_rough_disc(int radius, std::int64_t size, std::uint64_t seed = 0);

std::int64_t rough_disc_min_size(int radius);  // 2r^2 + 2r + 1
std::int64_t rough_disc_max_size(int radius);  // 2r^2 + 4r + 2 (exclusive)

/// Seeded random growth: start at the origin, repeatedly fill a uniformly
/// chosen empty cell adjacent to the current set.
Field gen_random_connected(std::int64_t size, std::uint64_t seed);

/// Text map: header "origin <x> <y>" naming the top-left character, then
/// rows north to south of '#' (full) and '.' (empty).
Field parse_field(std::string_view text);
std::string render_field(const Field& f);

/// JSON form {"cells": [[x, y], ...]}.
Field parse_field_json(std::string_view text);
std::string render_field_json(const Field& f);

/// Loads either format, chosen by the first non-blank character.
Field load_field(std::string_view text);

}  // namespace fortsim

#include "fortsim/fort_shape.hpp"

#include <algorithm>
#include <array>

namespace fortsim {

FortShape::FortShape(Cell first_cell, Cell se_corner, std::optional<Cell> appendage)
    : nw_(first_cell), se_(se_corner), appendage_(appendage) {}

FortShape FortShape::from_registers(Cell first_cell, Cell se_corner, int stage, int counter) {
  std::optional<Cell> app;
  if (stage == 0 && counter == 3) app = se_corner + unit(Heading::South);
  if (stage == 1 && counter == 1) app = Cell{se_corner.x, first_cell.y} + unit(Heading::East);
  if (stage == 1 && counter == 3) app = se_corner + unit(Heading::South);
  return FortShape(first_cell, se_corner, app);
}

bool FortShape::contains(Cell c) const {
  if (appendage_ && c == *appendage_) return true;
  if (c.x < nw_.x || c.x > se_.x || c.y < se_.y || c.y > nw_.y) return false;
  return c.x == nw_.x || c.x == se_.x || c.y == se_.y || c.y == nw_.y;
}

std::int64_t FortShape::rect_distance(Cell c) const {
  const auto dx = std::max<std::int64_t>({0, nw_.x - c.x, c.x - se_.x});
  const auto dy = std::max<std::int64_t>({0, se_.y - c.y, c.y - nw_.y});
  if (dx > 0 || dy > 0) return dx + dy;
  return std::min({c.x - nw_.x, se_.x - c.x, c.y - se_.y, nw_.y - c.y});
}

std::int64_t FortShape::distance(Cell c) const {
  auto d = rect_distance(c);
  if (appendage_) d = std::min(d, manhattan(c, *appendage_));
  return d;
}

Heading FortShape::outward(Cell c) const {
  const std::array<std::int64_t, 4> excess = {c.y - nw_.y, c.x - se_.x, se_.y - c.y, nw_.x - c.x};
  // Outside: the first direction (N, E, S, W) in which the distance grows.
  for (int i = 0; i < 4; ++i) {
    if (excess[i] > 0) return kCompass[i];
  }
  // Inside the rectangle: leave through the closest side.
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (-excess[i] < -excess[best]) best = i;
  }
  return kCompass[best];
}

std::vector<Cell> FortShape::perimeter_walk() const {
  std::vector<Cell> walk;
  const auto w = se_.x - nw_.x + 1;
  const auto h = nw_.y - se_.y + 1;
  if (w == 1 && h == 1) {
    walk.push_back(nw_);
  } else if (w == 1) {
    for (auto y = nw_.y; y >= se_.y; --y) walk.push_back({nw_.x, y});
    for (auto y = se_.y + 1; y < nw_.y; ++y) walk.push_back({nw_.x, y});
  } else if (h == 1) {
    for (auto x = nw_.x; x <= se_.x; ++x) walk.push_back({x, nw_.y});
    for (auto x = se_.x - 1; x > nw_.x; --x) walk.push_back({x, nw_.y});
  } else {
    for (auto y = nw_.y; y >= se_.y; --y) walk.push_back({nw_.x, y});
    for (auto x = nw_.x + 1; x <= se_.x; ++x) walk.push_back({x, se_.y});
    for (auto y = se_.y + 1; y <= nw_.y; ++y) walk.push_back({se_.x, y});
    for (auto x = se_.x - 1; x > nw_.x; --x) walk.push_back({x, nw_.y});
  }
  if (appendage_) {
    const auto it = std::find_if(walk.begin(), walk.end(),
                                 [&](Cell c) { return manhattan(c, *appendage_) == 1; });
    if (it != walk.end()) {
      const Cell corner = *it;
      walk.insert(std::next(it), {*appendage_, corner});
    }
  }
  return walk;
}

std::vector<Cell> FortShape::cells() const {
  std::vector<Cell> out;
  for (auto y = nw_.y; y >= se_.y; --y) {
    for (auto x = nw_.x; x <= se_.x; ++x) {
      if (contains({x, y})) out.push_back({x, y});
    }
  }
  if (appendage_) out.push_back(*appendage_);
  std::sort(out.begin(), out.end(), ReadingOrder{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t FortShape::size() const { return cells().size(); }

}  // namespace fortsim

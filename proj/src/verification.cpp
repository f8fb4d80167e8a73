#include "fortsim/verification.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace fortsim {

std::string_view to_string(FortClass c) {
  switch (c) {
    case FortClass::Perfect: return "perfect";
    case FortClass::Rectangular: return "rectangular";
    case FortClass::Rough: return "rough";
    case FortClass::Invalid: return "invalid";
  }
  return "?";
}

namespace {

// Is `cells` exactly the full perimeter of its bounding box?
std::optional<Box> hollow_rectangle(const std::vector<Cell>& cells) {
  if (cells.empty()) return std::nullopt;
  Box b{cells[0].x, cells[0].x, cells[0].y, cells[0].y};
  for (Cell c : cells) {
    b.min_x = std::min(b.min_x, c.x);
    b.max_x = std::max(b.max_x, c.x);
    b.min_y = std::min(b.min_y, c.y);
    b.max_y = std::max(b.max_y, c.y);
  }
  const auto w = b.max_x - b.min_x + 1;
  const auto h = b.max_y - b.min_y + 1;
  const auto perimeter = (w == 1 || h == 1) ? w * h : 2 * (w + h) - 4;
  if (static_cast<std::int64_t>(cells.size()) != perimeter) return std::nullopt;
  for (Cell c : cells) {
    if (c.x != b.min_x && c.x != b.max_x && c.y != b.min_y && c.y != b.max_y) return std::nullopt;
  }
  return b;  // no duplicates in a field, so count + membership means every perimeter cell is full
}

bool adjacent_to_corner_outside(Cell a, const Box& b) {
  const bool inside = a.x >= b.min_x && a.x <= b.max_x && a.y >= b.min_y && a.y <= b.max_y;
  if (inside) return false;
  for (Cell corner : {Cell{b.min_x, b.max_y}, Cell{b.max_x, b.max_y}, Cell{b.min_x, b.min_y}, Cell{b.max_x, b.min_y}}) {
    if (manhattan(a, corner) == 1) return true;
  }
  return false;
}

struct Partition {
  std::optional<Component> fort;
  std::vector<Component> free;
  bool marker_alone = false;
};

Partition partition(const Field& f, const FortAnchors& anchors) {
  Partition p;
  for (auto& comp : components(f)) {
    if (comp.contains(anchors.first_cell)) {
      p.fort = std::move(comp);
    } else if (anchors.marker && comp.contains(*anchors.marker)) {
      p.marker_alone = comp.size() == 1;
      if (!p.marker_alone) p.free.push_back(std::move(comp));
    } else {
      p.free.push_back(std::move(comp));
    }
  }
  return p;
}

std::int64_t distance_to(const Component& c, Cell x) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (Cell y : c.cells) best = std::min(best, manhattan(x, y));
  return best;
}

Diagnostic fail(std::string check, std::string detail, std::int64_t clock) {
  return {std::move(check), false, std::move(detail), clock};
}

std::string cell_text(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

FortReport classify_fort(const Field& f) {
  FortReport r;
  r.brick_count = static_cast<std::int64_t>(f.size());
  if (f.empty()) return r;
  r.fort_span = span(f);
  const auto cells = f.sorted_cells();

  if (auto box = hollow_rectangle(cells)) {
    r.width = box->max_x - box->min_x + 1;
    r.height = box->max_y - box->min_y + 1;
    r.wall_bricks = std::max(r.width, r.height);
    if (r.brick_count % 2 == 0) {
      const bool square = r.width == r.height && r.brick_count % 4 == 0;
      r.fort_class = square ? FortClass::Perfect : FortClass::Rectangular;
      return r;
    }
  }
  if (r.brick_count % 2 == 1 && r.brick_count >= 3) {
    const auto whole = *bounding_box(f);
    // The appendage is the only brick on one side of the bounding box.
    for (const auto& on_side : std::vector<std::function<bool(Cell)>>{
             [&](Cell c) { return c.y == whole.max_y; }, [&](Cell c) { return c.x == whole.max_x; },
             [&](Cell c) { return c.y == whole.min_y; }, [&](Cell c) { return c.x == whole.min_x; }}) {
      if (std::count_if(cells.begin(), cells.end(), on_side) != 1) continue;
      const Cell a = *std::find_if(cells.begin(), cells.end(), on_side);
      std::vector<Cell> rest;
      std::copy_if(cells.begin(), cells.end(), std::back_inserter(rest), [&](Cell c) { return c != a; });
      const auto box = hollow_rectangle(rest);
      if (!box || !adjacent_to_corner_outside(a, *box)) continue;
      r.width = box->max_x - box->min_x + 1;
      r.height = box->max_y - box->min_y + 1;
      r.wall_bricks = std::max(r.width, r.height);
      r.fort_class = FortClass::Rough;
      return r;
    }
  }
  r.fort_class = FortClass::Invalid;
  return r;
}

std::string to_json(const Diagnostic& d) {
  nlohmann::json j{{"check", d.check}, {"ok", d.ok}, {"detail", d.detail}, {"clock", d.clock}};
  return j.dump();
}

Diagnostic check_structured(const Field& f, const FortAnchors& anchors, std::int64_t clock) {
  const std::string name = "structured";
  const auto p = partition(f, anchors);
  if (!p.fort) return fail(name, "first cell is empty", clock);
  if (anchors.marker && !p.marker_alone) return fail(name, "marker is not a lone brick", clock);
  if (p.free.empty()) return {name, true, "", clock};
  if (!anchors.marker) return fail(name, "marker geometry: free components but no marker", clock);

  const Cell m = *anchors.marker;
  if (manhattan(m, anchors.first_cell) != 3) {
    return fail(name, "marker geometry: marker at distance " + std::to_string(manhattan(m, anchors.first_cell)) +
                          " from the first cell", clock);
  }
  const bool four = std::any_of(p.free.begin(), p.free.end(), [&](const Component& c) { return distance_to(c, m) == 4; });
  if (!four) return fail(name, "marker geometry: no free component at distance 4 from the marker", clock);
  for (const auto& c : p.free) {
    const auto d = min_distance(c, *p.fort);
    if (d < 7) {
      return fail(name, "gap violation: component at " + cell_text(c.representative()) + " is " +
                            std::to_string(d) + " from the fort", clock);
    }
  }
  return {name, true, "", clock};
}

Diagnostic check_strongly_structured(const Field& f, const FortAnchors& anchors, Cell robot, std::int64_t clock) {
  auto d = check_structured(f, anchors, clock);
  d.check = "strongly_structured";
  if (!d.ok) return d;
  const auto p = partition(f, anchors);
  for (const auto& c : p.free) {
    const auto dist = min_distance(c, *p.fort);
    if (dist > 8) {
      return fail(d.check, "lost component at " + cell_text(c.representative()) + ", distance " + std::to_string(dist),
                  clock);
    }
  }
  if (anchors.marker && robot != *anchors.marker) {
    return fail(d.check, "robot not at marker: robot " + cell_text(robot) + ", marker " + cell_text(*anchors.marker),
                clock);
  }
  return d;
}

std::vector<Cell> removability_oracle(const Component& c) {
  std::vector<Cell> out;
  for (Cell x : c.cells) {
    std::vector<Cell> rest;
    std::copy_if(c.cells.begin(), c.cells.end(), std::back_inserter(rest), [&](Cell y) { return y != x; });
    if (is_connected(rest)) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), ReadingOrder{});
  return out;
}

std::vector<Cell> articulation_points(const Component& c) {
  const auto n = c.cells.size();
  if (n <= 2) return {};
  std::unordered_map<Cell, std::size_t, CellHash> index;
  for (std::size_t i = 0; i < n; ++i) index[c.cells[i]] = i;

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> cut(n, false);
  int timer = 0;
  // iterative DFS: (vertex, parent, next neighbour slot, child count)
  struct Frame {
    std::size_t v;
    std::size_t parent;
    int slot;
    int children;
  };
  std::vector<Frame> stack{{0, n, 0, 0}};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    auto& fr = stack.back();
    if (fr.slot < 4) {
      const Cell nb = neighbours(c.cells[fr.v])[static_cast<std::size_t>(fr.slot++)];
      const auto it = index.find(nb);
      if (it == index.end() || it->second == fr.parent) continue;
      const auto u = it->second;
      if (disc[u] >= 0) {
        low[fr.v] = std::min(low[fr.v], disc[u]);
      } else {
        disc[u] = low[u] = timer++;
        ++fr.children;
        stack.push_back({u, fr.v, 0, 0});
      }
      continue;
    }
    const Frame done = fr;
    stack.pop_back();
    if (stack.empty()) {
      cut[done.v] = done.children > 1;
      break;
    }
    auto& parent = stack.back();
    low[parent.v] = std::min(low[parent.v], low[done.v]);
    if (parent.parent != n && low[done.v] >= disc[parent.v]) cut[parent.v] = true;
  }
  std::vector<Cell> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (cut[i]) out.push_back(c.cells[i]);
  }
  std::sort(out.begin(), out.end(), ReadingOrder{});
  return out;
}

Diagnostic check_extraction(const Field& before, const Field& after, std::int64_t clock) {
  const std::string name = "extraction";
  std::vector<Cell> removed, added;
  for (Cell c : before.sorted_cells()) {
    if (!after.contains(c)) removed.push_back(c);
  }
  for (Cell c : after.sorted_cells()) {
    if (!before.contains(c)) added.push_back(c);
  }
  if (removed.size() != added.size() + 1 || added.size() > 2) {
    return fail(name, std::to_string(removed.size()) + " removed, " + std::to_string(added.size()) + " added", clock);
  }
  const auto comps = components(before);
  const auto source = std::find_if(comps.begin(), comps.end(), [&](const Component& c) { return c.contains(removed[0]); });
  for (Cell r : removed) {
    if (!source->contains(r)) return fail(name, "bricks taken from more than one component", clock);
  }
  std::vector<Cell> remaining;
  for (Cell c : source->cells) {
    if (after.contains(c)) remaining.push_back(c);
  }
  for (Cell a : added) {
    const auto nb = neighbours(a);
    const bool touches = std::any_of(nb.begin(), nb.end(), [&](Cell x) { return source->contains(x); });
    if (!touches) return fail(name, "relocated brick " + cell_text(a) + " left its component", clock);
    remaining.push_back(a);
  }
  if (remaining.empty()) return {name, true, "", clock};
  // The remaining source must be a whole component of `after`: connected and not merged.
  const auto after_comps = components(after);
  const auto it = std::find_if(after_comps.begin(), after_comps.end(),
                               [&](const Component& c) { return c.contains(remaining[0]); });
  if (it->size() != remaining.size()) {
    return fail(name, "component at " + cell_text(remaining[0]) + " split or merged", clock);
  }
  return {name, true, "", clock};
}

ReplayResult replay_validate(const std::vector<TraceEvent>& trace, const Field& initial, std::optional<Cell> start) {
  if (trace.empty()) return {};
  Field field = initial;
  const std::size_t total = initial.size();
  const TraceEvent& first = trace.front();

  RobotPose pose;
  pose.heading = first.heading;
  if (first.action == Action::TurnLeft) pose.heading = turn_right(first.heading);
  if (first.action == Action::TurnRight) pose.heading = turn_left(first.heading);
  pose.position = first.position;
  if (first.action == Action::Move) pose.position = first.position - unit(first.heading);
  if (start) pose.position = *start;
  pose.carrying = false;
  std::int64_t clock = 0;

  auto violation = [](std::size_t i, std::string msg) { return ReplayResult{false, i, std::move(msg)}; };

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& e = trace[i];
    const bool costs = e.action == Action::Move || e.action == Action::Pick || e.action == Action::Drop;
    if (e.clock != clock + (costs ? 1 : 0)) return violation(i, "clock out of sequence");
    clock = e.clock;

    switch (e.action) {
      case Action::Move:
        if (manhattan(e.position, pose.position) != 1) return violation(i, "move to a non-adjacent cell");
        if (e.heading != pose.heading) return violation(i, "heading changed during a move");
        if (e.target != e.position) return violation(i, "move target differs from position");
        break;
      case Action::TurnLeft:
      case Action::TurnRight: {
        const Heading want = e.action == Action::TurnLeft ? turn_left(pose.heading) : turn_right(pose.heading);
        if (e.position != pose.position || e.heading != want) return violation(i, "inconsistent turn");
        break;
      }
      case Action::Pick:
        if (e.position != pose.position || e.heading != pose.heading) return violation(i, "pose changed during pick");
        if (manhattan(e.target, pose.position) > 1) return violation(i, "pick target out of reach");
        if (pose.carrying) return violation(i, "pick while carrying");
        if (!field.erase(e.target)) return violation(i, "pick on an empty cell");
        break;
      case Action::Drop:
        if (e.position != pose.position || e.heading != pose.heading) return violation(i, "pose changed during drop");
        if (manhattan(e.target, pose.position) > 1) return violation(i, "drop target out of reach");
        if (!pose.carrying) return violation(i, "drop while light");
        if (!field.insert(e.target)) return violation(i, "drop on a full cell");
        break;
    }
    pose.position = e.position;
    pose.heading = e.heading;
    if (e.action == Action::Pick) pose.carrying = true;
    if (e.action == Action::Drop) pose.carrying = false;
    if (e.carrying != pose.carrying) return violation(i, "carrying flag disagrees with replay");
    if (field.size() + (pose.carrying ? 1 : 0) != total) return violation(i, "brick count not conserved");
  }
  return {};
}

}  // namespace fortsim

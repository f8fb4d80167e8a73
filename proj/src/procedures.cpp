#include "fortsim/procedures.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <string>

namespace fortsim {

namespace {

constexpr std::int64_t kMaxRayLength = 10'000'000;
constexpr int kClearRadius = 6;      // bricks this close to the fort are swept away
constexpr int kGapDistance = 7;      // swept bricks land at least this far out
constexpr int kLostDistance = 8;     // a free component must keep a cell this close to the fort
constexpr int kMarkerToFirst = 3;
constexpr int kMarkerToFree = 4;
constexpr int kShiftRadius = 2;      // a shift only touches cells this close to the taken brick

// Offsets with norm <= r, ordered by norm and then reading order.
std::vector<Cell> offsets_within(int r) {
  std::vector<Cell> out;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (std::abs(dx) + std::abs(dy) <= r) out.push_back({dx, dy});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](Cell a, Cell b) {
    const auto na = norm1(a), nb = norm1(b);
    if (na != nb) return na < nb;
    return ReadingOrder{}(a, b);
  });
  return out;
}

const std::vector<Cell>& offsets(int r) {
  static const std::vector<std::vector<Cell>> table = [] {
    std::vector<std::vector<Cell>> t;
    for (int i = 0; i <= kSensingRadius; ++i) t.push_back(offsets_within(i));
    return t;
  }();
  return table.at(static_cast<std::size_t>(r));
}

// Are all `nodes` joined by full cells of `grid` without leaving the window?
bool connected_in_window(const Window& grid, const std::vector<Cell>& nodes) {
  if (nodes.size() <= 1) return true;
  std::vector<Cell> seen{nodes.front()};
  std::deque<Cell> queue{nodes.front()};
  auto visited = [&](Cell c) { return std::find(seen.begin(), seen.end(), c) != seen.end(); };
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (Cell nb : neighbours(c)) {
      if (!Window::in_range(nb) || !grid.full(nb) || visited(nb)) continue;
      seen.push_back(nb);
      queue.push_back(nb);
    }
  }
  return std::all_of(nodes.begin(), nodes.end(), visited);
}

std::vector<Cell> full_neighbours(const Window& grid, Cell c) {
  std::vector<Cell> out;
  for (Cell nb : neighbours(c)) {
    if (Window::in_range(nb) && grid.full(nb)) out.push_back(nb);
  }
  return out;
}

std::vector<Cell> ring_clockwise(std::int64_t d) {
  std::vector<Cell> ring;
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({i, d - i});
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({d - i, -i});
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({-i, -d + i});
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({-d + i, i});
  return ring;
}

}  // namespace

std::string_view to_string(Extraction e) {
  switch (e) {
    case Extraction::None: return "none";
    case Extraction::Leaf: return "leaf";
    case Extraction::Removable: return "removable";
    case Extraction::Shifted: return "shifted";
  }
  return "?";
}

class Controller::Scope {
 public:
  Scope(Controller& c, Procedure p)
      : ctl_(c), proc_(p), prev_tag_(c.robot_.enter(p)), prev_phase_(c.state_.phase),
        exceptions_(std::uncaught_exceptions()) {
    c.state_.phase = p;
  }
  ~Scope() {
    ctl_.robot_.enter(prev_tag_);
    ctl_.state_.phase = prev_phase_;
    if (std::uncaught_exceptions() == exceptions_ && ctl_.on_exit_) ctl_.on_exit_(proc_);
  }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  Controller& ctl_;
  Procedure proc_;
  Procedure prev_tag_;
  Procedure prev_phase_;
  int exceptions_;
};

// ---- movement and manipulation ------------------------------------------

void Controller::face(Heading h) {
  const int diff = (static_cast<int>(h) - static_cast<int>(robot_.heading()) + 4) % 4;
  if (diff == 1) {
    robot_.turn_right();
  } else if (diff == 3) {
    robot_.turn_left();
  } else if (diff == 2) {
    robot_.turn_right();
    robot_.turn_right();
  }
}

void Controller::go_to(Cell target) {
  const Cell delta = target - robot_.position();
  if (delta.x != 0) {
    face(delta.x > 0 ? Heading::East : Heading::West);
    for (auto i = std::abs(delta.x); i > 0; --i) robot_.step_forward();
  }
  if (delta.y != 0) {
    face(delta.y > 0 ? Heading::North : Heading::South);
    for (auto i = std::abs(delta.y); i > 0; --i) robot_.step_forward();
  }
}

// ---- anchors --------------------------------------------------------------

void Controller::choose_anchors() {
  const Window w = robot_.observe_window();
  std::vector<std::pair<Cell, int>> queue{{Cell{}, 0}};
  std::optional<Cell> first;
  for (std::size_t i = 0; i < queue.size() && !first; ++i) {
    const auto [c, depth] = queue[i];
    if (depth == 2) {
      first = c;
      break;
    }
    for (Cell nb : neighbours(c)) {
      if (!w.full(nb)) continue;
      const bool known = std::any_of(queue.begin(), queue.end(), [&](const auto& q) { return q.first == nb; });
      if (!known) queue.push_back({nb, depth + 1});
    }
  }
  if (!first) throw ContractViolation("no full cell at distance 2 from the start cell");
  const Cell here = robot_.position();
  state_.anchors.marker = here;
  state_.anchors.first_cell = here + *first;
  state_.anchors.se_corner = state_.anchors.first_cell;
  state_.stage = 0;
  state_.counter = 1;
}

// ---- Sweep ----------------------------------------------------------------

void Controller::sweep() {
  Scope scope(*this, Procedure::Sweep);
  const FortShape fort = state_.fort();
  const Cell first = state_.anchors.first_cell;

  go_to(first);
  state_.free_seen = false;
  state_.ferry_source.reset();
  for (Cell v : fort.perimeter_walk()) {
    go_to(v);
    const Window w = robot_.observe_window();
    note_free(w, v, fort);
    clear_band(w, v, fort);
  }
  go_to(first);
  place_marker(fort);
  if (state_.anchors.marker) go_to(*state_.anchors.marker);
}

void Controller::clear_band(const Window& w, Cell anchor, const FortShape& fort) {
  // One snapshot suffices: pushed bricks land outside the band, so the
  // remaining targets are unaffected by earlier pushes.
  std::vector<Cell> targets;
  for (Cell o : offsets(kClearRadius)) {
    const Cell c = anchor + o;
    if (w.full(o) && !fort.contains(c) && c != state_.anchors.marker) targets.push_back(c);
  }
  while (!targets.empty()) {
    const Cell here = robot_.position();
    const auto next = std::min_element(targets.begin(), targets.end(),
                                       [&](Cell a, Cell b) { return manhattan(here, a) < manhattan(here, b); });
    const Cell c = *next;
    targets.erase(next);
    push_outward(c, fort);
  }
}

void Controller::push_outward(Cell brick, const FortShape& fort) {
  go_to(brick);
  robot_.pick();
  face(fort.outward(brick));
  for (std::int64_t i = 0; i < kMaxRayLength; ++i) {
    robot_.step_forward();
    if (!robot_.sense({}) && fort.distance(robot_.position()) >= kGapDistance) {
      robot_.drop();
      note_source(robot_.position(), fort);
      return;
    }
  }
  throw ContractViolation("sweep ray never found an empty cell");
}

void Controller::note_free(const Window& w, Cell anchor, const FortShape& fort) {
  for (Cell o : offsets(kSensingRadius)) {
    if (!w.full(o)) continue;
    const Cell c = anchor + o;
    if (fort.contains(c) || c == state_.anchors.marker) continue;
    state_.free_seen = true;
    note_source(c, fort);
  }
}

void Controller::note_source(Cell c, const FortShape& fort) {
  // band bricks are about to be pushed, so they cannot serve as a source
  const auto d = fort.distance(c);
  if (d > kClearRadius && d <= kLostDistance &&
      (!state_.ferry_source || d < fort.distance(*state_.ferry_source))) {
    state_.ferry_source = c;
  }
}

void Controller::place_marker(const FortShape& fort) {
  if (!state_.free_seen) return;
  if (!state_.anchors.marker) throw ContractViolation("free bricks remain but the marker is gone");
  const Cell first = state_.anchors.first_cell;

  auto nearest_free = [&]() -> std::optional<Cell> {
    const Window w = robot_.observe_window();
    for (Cell o : offsets(kMarkerToFirst + kMarkerToFree)) {
      const Cell c = first + o;
      if (w.full(o) && !fort.contains(c) && c != state_.anchors.marker) return c;
    }
    return std::nullopt;
  };

  auto target = nearest_free();
  if (!target) {
    ferry(fort);
    go_to(first);
    target = nearest_free();
    if (!target) throw ContractViolation("ferried brick not visible from the first cell");
  }
  const auto cell = choose_marker_cell(fort, *target);
  if (!cell) throw ContractViolation("no cell satisfies the marker geometry");
  if (*cell != *state_.anchors.marker) {
    go_to(*state_.anchors.marker);
    robot_.pick();
    go_to(*cell);
    robot_.drop();
    state_.anchors.marker = *cell;
  }
}

std::optional<Cell> Controller::choose_marker_cell(const FortShape& fort, Cell target) {
  const Cell first = state_.anchors.first_cell;
  const Window w = robot_.observe_window();  // robot stands on the first cell
  auto free_at = [&](Cell c) {
    const Cell o = c - first;
    return Window::in_range(o) && w.full(o) && !fort.contains(c) && c != state_.anchors.marker;
  };
  auto acceptable = [&](Cell x) {
    if (manhattan(x, first) != kMarkerToFirst || fort.distance(x) != kMarkerToFirst) return false;
    if (x != state_.anchors.marker && w.full(x - first)) return false;
    std::int64_t nearest = kMarkerToFree + 1;
    for (Cell q : offsets(kMarkerToFree)) {
      if (free_at(x + q)) nearest = std::min(nearest, norm1(q));
    }
    return nearest == kMarkerToFree;
  };

  const Cell d = target - first;
  const auto ax = std::abs(d.x), ay = std::abs(d.y);
  if (ax + ay > 0) {
    auto a = (kMarkerToFirst * ax * 2 + (ax + ay)) / (2 * (ax + ay));  // rounded share of x
    a = std::clamp<std::int64_t>(a, std::max<std::int64_t>(0, kMarkerToFirst - ay), std::min<std::int64_t>(kMarkerToFirst, ax));
    const Cell x = first + Cell{(d.x < 0 ? -a : a), (d.y < 0 ? -1 : 1) * (kMarkerToFirst - a)};
    if (acceptable(x)) return x;
  }
  for (Cell o : ring_clockwise(kMarkerToFirst)) {
    if (acceptable(first + o)) return first + o;
  }
  return std::nullopt;
}

void Controller::ferry(const FortShape& fort) {
  if (!state_.ferry_source) throw ContractViolation("free bricks seen but none close enough to ferry");
  const Cell first = state_.anchors.first_cell;
  const Cell source = *state_.ferry_source;
  go_to(source);
  extract_from(source);
  // Spots north-west of the first cell at distance 7 from it and from the
  // fort; the nearest one to the robot wins.
  std::vector<Cell> spots;
  for (std::int64_t a = 0; a <= kGapDistance; ++a) spots.push_back(first + Cell{-a, kGapDistance - a});
  const Cell here = robot_.position();
  std::stable_sort(spots.begin(), spots.end(),
                   [&](Cell p, Cell q) { return manhattan(here, p) < manhattan(here, q); });
  for (Cell spot : spots) {
    if (fort.distance(spot) != kGapDistance) continue;
    go_to(spot);
    if (!robot_.sense({})) {
      robot_.drop();
      return;
    }
  }
  throw ContractViolation("no empty ferry spot next to the first cell");
}

// ---- FindNextBrick / ReturnToMarker -------------------------------------

void Controller::find_next_brick() {
  Scope scope(*this, Procedure::FindNextBrick);
  const FortShape fort = state_.fort();
  if (!state_.anchors.marker) throw ContractViolation("find_next_brick without a marker");
  go_to(*state_.anchors.marker);
  const Window w = robot_.observe_window();
  const Cell here = robot_.position();
  std::optional<Cell> entry;
  for (Cell o : offsets(kSensingRadius)) {
    if (o == Cell{} || !w.full(o) || fort.contains(here + o)) continue;
    entry = here + o;
    break;
  }
  if (!entry) throw ContractViolation("no free component visible from the marker");
  go_to(*entry);
  extract_from(*entry);
}

void Controller::return_to_marker() {
  Scope scope(*this, Procedure::ReturnToMarker);
  if (state_.anchors.marker) go_to(*state_.anchors.marker);
}

void Controller::extract_from(Cell entry) {
  const FortShape fort = state_.fort();
  state_.entry = entry;
  state_.walk_moves = 0;
  // Start with an empty cell on the left; prefer the cell we came from.
  std::optional<Heading> start;
  for (int k = 0; k < 4 && !start; ++k) {
    const auto h = static_cast<Heading>((static_cast<int>(turn_left(robot_.heading())) + k) % 4);
    if (!robot_.sense(unit(turn_left(h)))) start = h;
  }
  if (!start) throw ContractViolation("component entry has no empty neighbour");
  state_.entry_heading = *start;

  state_.tour_anchors = {};
  for (int pass = 1; pass <= 2; ++pass) {
    state_.tours = pass;
    const bool second = pass == 2;
    face(*start);
    note_anchor(fort);
    if (try_take_here(fort, second)) return;
    for (std::int64_t guard = 0; guard < kMaxRayLength; ++guard) {
      const bool moved = tour_step();
      if (moved) note_anchor(fort);
      if (moved && try_take_here(fort, second)) return;
      if (robot_.position() == entry && robot_.heading() == *start) break;
    }
  }
  throw ContractViolation("no extractable brick on the component contour");
}

void Controller::note_anchor(const FortShape& fort) {
  const Cell here = robot_.position();
  if (fort.distance(here) > kLostDistance) return;
  auto& a = state_.tour_anchors;
  if (!a[0]) {
    a[0] = here;
  } else if (!a[1] && *a[0] != here) {
    a[1] = here;
  }
}

// One step of the left-hand contour tour; the cell on the left stays empty.
bool Controller::tour_step() {
  const Heading h = robot_.heading();
  const Cell front = unit(h);
  if (!robot_.sense(front)) {
    robot_.turn_right();
    return false;
  }
  const bool front_left = robot_.sense(front + unit(turn_left(h)));
  robot_.step_forward();
  ++state_.walk_moves;
  if (front_left) {
    robot_.turn_left();
    robot_.step_forward();
    ++state_.walk_moves;
  }
  return true;
}

bool Controller::try_take_here(const FortShape& fort, bool allow_shift) {
  const Cell here = robot_.position();
  const Window w = robot_.observe_window();
  if (!w.full({})) return false;

  // Cells provably in this component.
  std::vector<Cell> own{Cell{}};
  for (std::size_t i = 0; i < own.size(); ++i) {
    for (Cell nb : full_neighbours(w, own[i])) {
      if (std::find(own.begin(), own.end(), nb) == own.end()) own.push_back(nb);
    }
  }
  auto is_own = [&](Cell o) { return std::find(own.begin(), own.end(), o) != own.end(); };

  // After the change `nodes` must still be joined, and the component must
  // not become lost: it keeps a cell within kLostDistance of the fort.
  auto sound = [&](const Window& after, const std::vector<Cell>& nodes, std::initializer_list<Cell> taken) {
    if (!connected_in_window(after, nodes)) return false;
    const bool far = std::all_of(taken.begin(), taken.end(),
                                 [&](Cell o) { return fort.distance(here + o) > kLostDistance; });
    if (far || nodes.empty()) return true;
    if (allow_shift) {  // second tour: the anchors cover the whole contour
      for (const auto& a : state_.tour_anchors) {
        if (a && std::none_of(taken.begin(), taken.end(), [&](Cell o) { return here + o == *a; })) return true;
      }
    }
    std::vector<Cell> seen{nodes.front()};
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (fort.distance(here + seen[i]) <= kLostDistance) return true;
      for (Cell nb : full_neighbours(after, seen[i])) {
        if (std::find(seen.begin(), seen.end(), nb) == seen.end()) seen.push_back(nb);
      }
    }
    return false;
  };

  Window after = w;
  after.set({}, false);
  const auto nbrs = full_neighbours(after, {});
  if (sound(after, nbrs, {Cell{}})) {
    robot_.pick();
    state_.last_extraction = nbrs.size() <= 1 ? Extraction::Leaf : Extraction::Removable;
    return true;
  }
  if (!allow_shift) return false;

  // Shift: take this brick and move one nearby brick b to an empty cell e.
  for (Cell b : offsets(kShiftRadius)) {
    if (b == Cell{} || !is_own(b)) continue;
    for (Cell e : offsets(kShiftRadius)) {
      if (w.full(e)) continue;
      const Cell abs_e = here + e;
      if (fort.distance(abs_e) < kGapDistance || abs_e == state_.anchors.marker) continue;
      const auto e_nbrs = full_neighbours(w, e);
      if (!std::all_of(e_nbrs.begin(), e_nbrs.end(), is_own)) continue;
      Window shifted = after;
      shifted.set(b, false);
      shifted.set(e, true);
      if (full_neighbours(shifted, e).empty()) continue;
      std::vector<Cell> nodes{e};
      for (Cell c : full_neighbours(shifted, {})) nodes.push_back(c);
      for (Cell c : full_neighbours(shifted, b)) nodes.push_back(c);
      if (!sound(shifted, nodes, {Cell{}, b})) continue;
      robot_.pick();
      go_to(abs_e);
      robot_.drop();
      go_to(here + b);
      robot_.pick();
      state_.last_extraction = Extraction::Shifted;
      return true;
    }
  }
  return false;
}

// ---- ExtendFort and helpers -----------------------------------------------

void Controller::traverse_wall() {
  Scope scope(*this, Procedure::TraverseWall);
  while (robot_.sense(unit(robot_.heading()))) robot_.step_forward();
}

void Controller::shift_bricks() {
  Scope scope(*this, Procedure::ShiftBricks);
  while (robot_.sense(unit(robot_.heading()))) {
    robot_.step_forward();
    if (robot_.sense(unit(turn_left(robot_.heading())))) {
      throw ContractViolation("shift_bricks: cell to the left is occupied");
    }
    robot_.drop_at(Side::Left);
    if (robot_.sense(unit(robot_.heading()))) robot_.pick();
  }
}

void Controller::extend_fort() {
  Scope scope(*this, Procedure::ExtendFort);
  if (!robot_.carrying()) throw ContractViolation("extend_fort without a brick");
  auto& a = state_.anchors;
  go_to(a.first_cell);
  face(Heading::East);

  if (state_.stage == 0) {
    switch (state_.counter) {
      case 1:
        robot_.drop_at(Side::Front);
        a.se_corner = a.first_cell + unit(Heading::East);
        break;
      case 2:
        robot_.step_forward();
        robot_.drop_at(Side::Right);
        break;
      case 3:
        robot_.drop_at(Side::Right);
        a.se_corner = a.first_cell + Cell{1, -1};
        state_.stage = 1;
        break;
      default:
        throw ContractViolation("stage 0 counter out of range");
    }
  } else {
    switch (state_.counter) {
      case 0:
        traverse_wall();
        robot_.drop_at(Side::Front);
        break;
      case 1:
        traverse_wall();
        robot_.step_back();
        robot_.turn_right();
        shift_bricks();
        a.se_corner.x += 1;
        break;
      case 2:
        traverse_wall();
        robot_.turn_right();
        traverse_wall();
        robot_.drop_at(Side::Front);
        break;
      case 3:
        traverse_wall();
        robot_.turn_right();
        traverse_wall();
        robot_.step_back();
        robot_.turn_right();
        shift_bricks();
        a.se_corner.y -= 1;
        break;
      default:
        throw ContractViolation("stage 1 counter out of range");
    }
  }
  if (robot_.carrying()) throw ContractViolation("extend_fort finished still carrying");
  state_.counter = (state_.counter + 1) % 4;
  sweep();
}

void Controller::absorb_marker() {
  if (!state_.anchors.marker) throw ContractViolation("no marker to absorb");
  go_to(*state_.anchors.marker);
  robot_.pick();
  state_.anchors.marker.reset();
  extend_fort();
}

}  // namespace fortsim

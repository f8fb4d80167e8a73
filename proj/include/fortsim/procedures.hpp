#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fortsim/fort_shape.hpp"
#include "fortsim/robot_env.hpp"

namespace fortsim {

/// Reference points of the construction. The first cell F is the pinned
/// north-west corner of the fort; the marker M is a lone brick the robot
/// uses as its home base. `se_corner` tracks the far corner of the fort's
/// rectangular core as the robot extends it.
struct FortAnchors {
  Cell first_cell;
  std::optional<Cell> marker;
  Cell se_corner;
};

/// How the last brick was taken from a free component: a leaf, a cell
/// whose neighbours stay joined nearby, or a shift (one brick relocated).
enum class Extraction : std::uint8_t { None, Leaf, Removable, Shifted };

std::string_view to_string(Extraction e);

/// Persistent controller data. Everything except the anchors and the walk
/// bookkeeping is a small bounded register.
struct ControllerState {
  int stage = 0;
  int counter = 1;
  Procedure phase = Procedure::TopLevel;
  FortAnchors anchors;

  bool free_seen = false;                // set by the last sweep
  std::optional<Cell> ferry_source;      // closest free brick to the fort seen or dropped during the sweep

  // search walk registers
  Cell entry;
  Heading entry_heading = Heading::North;  // tour start: entry with an empty cell on the left
  std::int64_t walk_moves = 0;
  int tours = 0;  // 1: local proofs only; 2: a full tour was needed
  /// Up to two distinct contour cells within distance 8 of the fort, seen
  /// on the current tour. Connectivity keeps them in the component.
  std::array<std::optional<Cell>, 2> tour_anchors;
  Extraction last_extraction = Extraction::None;

  FortShape fort() const {
    return FortShape::from_registers(anchors.first_cell, anchors.se_corner, stage, counter);
  }
};

/// The robot's program. It acts only through RobotInterface; `on_exit` is
/// an observation hook run after each top-level procedure returns.
class Controller {
 public:
  explicit Controller(RobotInterface& robot) : robot_(robot) {}

  ControllerState& state() { return state_; }
  const ControllerState& state() const { return state_; }

  void set_exit_hook(std::function<void(Procedure)> hook) { on_exit_ = std::move(hook); }

  /// Breadth-first search from the robot's cell (N, E, S, W order); the first
  /// full cell at depth 2 becomes the first cell. Sets marker = current cell.
  void choose_anchors();

  void sweep();
  void find_next_brick();
  void return_to_marker();
  void extend_fort();
  void traverse_wall();
  void shift_bricks();

  /// Final step of construction: pick the marker brick and add it.
  void absorb_marker();

  // movement helpers, public for tests
  void face(Heading h);
  void go_to(Cell target);

 private:
  class Scope;

  void clear_band(const Window& w, Cell anchor, const FortShape& fort);
  void push_outward(Cell brick, const FortShape& fort);
  void note_free(const Window& w, Cell anchor, const FortShape& fort);
  void note_source(Cell c, const FortShape& fort);
  void place_marker(const FortShape& fort);
  std::optional<Cell> choose_marker_cell(const FortShape& fort, Cell target);
  void ferry(const FortShape& fort);

  void extract_from(Cell entry);
  bool tour_step();
  bool try_take_here(const FortShape& fort, bool allow_shift);
  void note_anchor(const FortShape& fort);

  RobotInterface& robot_;
  ControllerState state_;
  std::function<void(Procedure)> on_exit_;
};

}  // namespace fortsim

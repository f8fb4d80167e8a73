#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fortsim/field.hpp"
#include "fortsim/grid.hpp"

namespace fortsim {

inline constexpr int kSensingRadius = 8;

/// A robot or controller broke a precondition of the model (pick on an
/// empty cell, sensing beyond radius 8, ...). The run cannot continue.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Action : std::uint8_t { Move, TurnLeft, TurnRight, Pick, Drop };

enum class Procedure : std::uint8_t {
  TopLevel,
  Sweep,
  FindNextBrick,
  ReturnToMarker,
  ExtendFort,
  TraverseWall,
  ShiftBricks,
};

inline constexpr std::array<Procedure, 7> kProcedures = {
    Procedure::TopLevel,   Procedure::Sweep,        Procedure::FindNextBrick, Procedure::ReturnToMarker,
    Procedure::ExtendFort, Procedure::TraverseWall, Procedure::ShiftBricks};

std::string_view to_string(Action a);
std::string_view to_string(Procedure p);
std::optional<Action> parse_action(std::string_view s);
std::optional<Procedure> parse_procedure(std::string_view s);
std::optional<Heading> parse_heading(std::string_view s);

/// Cells adjacent to the robot, in its own frame.
enum class Side : std::uint8_t { Front, Right, Back, Left };

constexpr Heading side_heading(Heading h, Side s) {
  return static_cast<Heading>((static_cast<int>(h) + static_cast<int>(s)) % 4);
}

struct TraceEvent {
  std::int64_t clock = 0;
  Action action = Action::Move;
  Cell position;  // robot position after the action
  Heading heading = Heading::North;
  bool carrying = false;
  Procedure tag = Procedure::TopLevel;
  Cell target;  // cell picked from / dropped into; equals position for moves and turns

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

std::string to_jsonl(const TraceEvent& e);
TraceEvent trace_event_from_jsonl(std::string_view line);

/// Snapshot of every cell within Manhattan distance 8 of the robot.
class Window {
 public:
  static constexpr int kSide = 2 * kSensingRadius + 1;

  Window() = default;

  bool full(Cell offset) const {
    if (norm1(offset) > kSensingRadius) {
      throw ContractViolation("window query outside sensing radius");
    }
    return bits_[index(offset)];
  }
  void set(Cell offset, bool value) { bits_[index(offset)] = value; }

  static bool in_range(Cell offset) { return norm1(offset) <= kSensingRadius; }

 private:
  static std::size_t index(Cell o) {
    return static_cast<std::size_t>((o.y + kSensingRadius) * kSide + (o.x + kSensingRadius));
  }
  std::array<bool, kSide * kSide> bits_{};
};

/// What a controller may do. Sensing is relative to the robot and bounded
/// by radius 8; there is no way to reach the field as a whole.
class RobotInterface {
 public:
  virtual ~RobotInterface() = default;

  virtual Cell position() const = 0;
  virtual Heading heading() const = 0;
  virtual bool carrying() const = 0;

  virtual bool sense(Cell offset) = 0;
  virtual Window observe_window() = 0;

  virtual void step_forward() = 0;
  /// Translate one cell opposite to the heading without turning.
  virtual void step_back() = 0;
  virtual void turn_left() = 0;
  virtual void turn_right() = 0;

  virtual void pick() = 0;
  virtual void drop() = 0;
  virtual void pick_at(Side s) = 0;
  virtual void drop_at(Side s) = 0;

  /// Sets the procedure tag for subsequent events, returning the previous one.
  virtual Procedure enter(Procedure p) = 0;
};

struct RobotPose {
  Cell position;
  Heading heading = Heading::North;
  bool carrying = false;
};

/// Ground truth for one simulation: the field, the robot, the clock and
/// the audits. Moves, picks and drops cost one clock unit; turns are free.
class World final : public RobotInterface {
 public:
  World(Field initial, Cell start, Heading heading = Heading::North);

  // RobotInterface
  Cell position() const override { return pose_.position; }
  Heading heading() const override { return pose_.heading; }
  bool carrying() const override { return pose_.carrying; }
  bool sense(Cell offset) override;
  Window observe_window() override;
  void step_forward() override;
  void step_back() override;
  void turn_left() override;
  void turn_right() override;
  void pick() override;
  void drop() override;
  void pick_at(Side s) override;
  void drop_at(Side s) override;
  Procedure enter(Procedure p) override;

  const Field& field() const { return field_; }
  const RobotPose& pose() const { return pose_; }
  std::int64_t clock() const { return clock_; }
  std::size_t initial_size() const { return initial_size_; }
  int max_sensed_radius() const { return max_sensed_; }

  /// Bricks on the grid plus the carried one equal the initial count.
  bool conservation_check() const;

  const std::map<Procedure, std::int64_t>& clock_by_procedure() const { return by_procedure_; }

  /// Keep every event in memory (off by default; long runs are large).
  void record_trace(bool on) { recording_ = on; }
  const std::vector<TraceEvent>& trace() const { return trace_; }

  /// Called after every event, e.g. for frame dumps or streaming output.
  void set_listener(std::function<void(const TraceEvent&, const World&)> fn) { listener_ = std::move(fn); }

 private:
  void emit(Action a, Cell target);
  void pick_cell(Cell c);
  void drop_cell(Cell c);

  Field field_;
  RobotPose pose_;
  std::size_t initial_size_;
  std::int64_t clock_ = 0;
  int max_sensed_ = 0;
  Procedure tag_ = Procedure::TopLevel;
  std::map<Procedure, std::int64_t> by_procedure_;
  bool recording_ = false;
  std::vector<TraceEvent> trace_;
  std::function<void(const TraceEvent&, const World&)> listener_;
};

}  // namespace fortsim

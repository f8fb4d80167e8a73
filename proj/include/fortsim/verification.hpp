#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fortsim/field.hpp"
#include "fortsim/procedures.hpp"
#include "fortsim/robot_env.hpp"

namespace fortsim {

enum class FortClass : std::uint8_t { Perfect, Rectangular, Rough, Invalid };

std::string_view to_string(FortClass c);

struct FortReport {
  FortClass fort_class = FortClass::Invalid;
  std::int64_t width = 0;   // of the rectangle, appendage excluded
  std::int64_t height = 0;
  std::int64_t fort_span = 0;
  std::int64_t wall_bricks = 0;  // bricks per wall; meaningful for perfect forts
  std::int64_t brick_count = 0;
};

/// Classifies a field as a fort. A perfect fort is a hollow square; other
/// even hollow rectangles are rectangular; a rough fort is a hollow
/// rectangle plus one brick outside it, 4-adjacent to a corner.
FortReport classify_fort(const Field& f);

/// Outcome of one invariant check, serialised as {check, ok, detail, clock}.
struct Diagnostic {
  std::string check;
  bool ok = true;
  std::string detail;
  std::int64_t clock = 0;
};

std::string to_json(const Diagnostic& d);

/// Ground truth check: the fort is the component containing the first cell,
/// the marker a singleton component. With free components present the
/// marker is 3 from F and exactly 4 from some free component, and every free
/// component is at least 7 from the fort.
Diagnostic check_structured(const Field& f, const FortAnchors& anchors, std::int64_t clock = 0);

/// check_structured plus: no free component further than 8 from the fort,
/// and the robot stands on the marker (when there is one).
Diagnostic check_strongly_structured(const Field& f, const FortAnchors& anchors, Cell robot,
                                     std::int64_t clock = 0);

/// Cells whose removal leaves the component connected (brute-force flood fill).
std::vector<Cell> removability_oracle(const Component& c);

/// Articulation points by depth-first low-link; independent of the oracle above.
std::vector<Cell> articulation_points(const Component& c);

/// One find_next_brick / return_to_marker pair changed `before` into `after`
/// (the robot now carries the missing brick). Accepts a single removal or a
/// shift: k+1 cells removed and k <= 2 added, all within one source
/// component, which must stay connected.
Diagnostic check_extraction(const Field& before, const Field& after, std::int64_t clock = 0);

struct ReplayResult {
  bool ok = true;
  std::size_t index = 0;  // first offending event when !ok
  std::string detail;
};

/// Re-executes a trace against `initial`. Without `start` the first event
/// fixes the start pose (a leading move is taken as a forward step).
ReplayResult replay_validate(const std::vector<TraceEvent>& trace, const Field& initial,
                             std::optional<Cell> start = std::nullopt);

}  // namespace fortsim

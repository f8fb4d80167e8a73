#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fortsim/field.hpp"
#include "fortsim/procedures.hpp"
#include "fortsim/robot_env.hpp"
#include "fortsim/verification.hpp"

namespace fortsim {

enum class CheckLevel : std::uint8_t {
  Off,
  Boundaries,  // invariants after every Sweep and every extraction
  Full,        // plus conservation after every event and a replay of the trace
};

std::optional<CheckLevel> parse_check_level(std::string_view s);

struct BuildOptions {
  CheckLevel check = CheckLevel::Off;
  bool record_trace = false;
  Heading start_heading = Heading::North;
  /// Observes every event together with the controller's registers.
  std::function<void(const TraceEvent&, const World&, const ControllerState&)> listener;
};

struct RunStats {
  std::int64_t z = 0;
  std::int64_t s_initial = 0;
  std::int64_t total_clock = 0;
  std::map<std::string, std::int64_t> per_procedure_clock;
  std::int64_t iterations = 0;
  bool degenerate = false;
  int max_sensed_radius = 0;
  std::int64_t max_walk_moves = 0;
  std::map<std::string, std::int64_t> extractions;  // by kind
};

struct BuildResult {
  Field final_field;
  std::vector<TraceEvent> trace;  // empty unless requested
  RunStats stats;
  FortReport report;
  std::vector<Diagnostic> violations;  // failed inline checks; empty when checks are off
  std::int64_t checks_run = 0;
};

/// Runs the construction from `start`. Throws FieldError when the input is
/// empty, disconnected, or does not contain `start`; ContractViolation when
/// the run breaks a robot precondition.
BuildResult build_fort(const Field& field, Cell start, const BuildOptions& options = {});

/// Summary record {z, span_initial, total_clock, clocks_per_procedure, ...}.
std::string summary_json(const BuildResult& r);

struct BenchRow {
  int r = 0;
  std::int64_t z = 0;
  std::int64_t steps = 0;
  double steps_per_z2 = 0.0;
};

/// Builds a rough disc per radius (smallest size, or every size when
/// `all_sizes`), started at the disc's centre. Rows are sorted by z.
std::vector<BenchRow> run_bench(int r_min, int r_max, bool all_sizes = false, std::uint64_t seed = 0,
                                unsigned threads = 0);

/// Least-squares slope of log(steps) against log(z); nullopt with fewer than two distinct z.
std::optional<double> loglog_slope(const std::vector<BenchRow>& rows);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// ASCII frame of `box`: '#' brick, '.' empty, 'F' first cell, 'M' marker, 'R' robot.
std::string render_frame(const Field& f, Cell robot, const FortAnchors& anchors, const Box& box);

}  // namespace fortsim

#include "fortsim/build.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace fortsim {

std::optional<CheckLevel> parse_check_level(std::string_view s) {
  if (s == "off") return CheckLevel::Off;
  if (s == "boundaries") return CheckLevel::Boundaries;
  if (s == "full") return CheckLevel::Full;
  return std::nullopt;
}

BuildResult build_fort(const Field& field, Cell start, const BuildOptions& options) {
  if (field.empty()) throw FieldError("empty field");
  if (!field.contains(start)) throw FieldError("start cell is empty");
  if (!is_connected(field)) throw FieldError("field is disconnected");

  BuildResult result;
  auto& stats = result.stats;
  stats.z = static_cast<std::int64_t>(field.size());
  stats.s_initial = span(field);
  for (auto p : kProcedures) stats.per_procedure_clock[std::string(to_string(p))] = 0;

  if (stats.s_initial <= 2) {
    stats.degenerate = true;
    result.final_field = field;
    result.report = classify_fort(field);
    return result;
  }

  const bool checking = options.check != CheckLevel::Off;
  const bool full = options.check == CheckLevel::Full;
  World world(field, start, options.start_heading);
  world.record_trace(options.record_trace || full);
  Controller ctl(world);

  auto record = [&](Diagnostic d) {
    ++result.checks_run;
    if (!d.ok) result.violations.push_back(std::move(d));
  };

  if (full || options.listener) {
    world.set_listener([&](const TraceEvent& e, const World& w) {
      if (full && !w.conservation_check()) record({"conservation", false, "brick count changed", e.clock});
      if (options.listener) options.listener(e, w, ctl.state());
    });
  }
  if (checking) {
    ctl.set_exit_hook([&](Procedure p) {
      if (p != Procedure::Sweep) return;
      record(check_strongly_structured(world.field(), ctl.state().anchors, world.position(), world.clock()));
    });
  }

  ctl.choose_anchors();
  ctl.sweep();
  while (ctl.state().free_seen) {
    if (stats.iterations >= stats.z) throw ContractViolation("construction loop exceeded z iterations");
    std::optional<Field> before;
    if (checking) before = world.field();
    ctl.find_next_brick();
    ctl.return_to_marker();
    if (before) {
      record(check_extraction(*before, world.field(), world.clock()));
      if (!world.conservation_check()) record({"conservation", false, "brick count changed", world.clock()});
    }
    stats.max_walk_moves = std::max(stats.max_walk_moves, ctl.state().walk_moves);
    ++stats.extractions[std::string(to_string(ctl.state().last_extraction))];
    ctl.extend_fort();
    ++stats.iterations;
  }
  ctl.absorb_marker();

  result.final_field = world.field();
  result.report = classify_fort(result.final_field);
  stats.total_clock = world.clock();
  for (const auto& [p, n] : world.clock_by_procedure()) stats.per_procedure_clock[std::string(to_string(p))] = n;
  stats.max_sensed_radius = world.max_sensed_radius();

  if (full) {
    const auto replay = replay_validate(world.trace(), field, start);
    record({"replay", replay.ok, replay.ok ? "" : "event " + std::to_string(replay.index) + ": " + replay.detail,
            world.clock()});
  }
  if (options.record_trace) result.trace = world.trace();
  return result;
}

std::string summary_json(const BuildResult& r) {
  const auto& s = r.stats;
  nlohmann::json j;
  j["status"] = s.degenerate ? "degenerate" : "ok";
  j["z"] = s.z;
  j["span_initial"] = s.s_initial;
  j["total_clock"] = s.total_clock;
  j["clocks_per_procedure"] = s.per_procedure_clock;
  j["iterations"] = s.iterations;
  j["fort_class"] = std::string(to_string(r.report.fort_class));
  j["fort_span"] = r.report.fort_span;
  j["fort_width"] = r.report.width;
  j["fort_height"] = r.report.height;
  j["max_sensed_radius"] = s.max_sensed_radius;
  j["max_walk_moves"] = s.max_walk_moves;
  j["extractions"] = s.extractions;
  j["checks_run"] = r.checks_run;
  j["violations"] = r.violations.size();
  return j.dump();
}

std::vector<BenchRow> run_bench(int r_min, int r_max, bool all_sizes, std::uint64_t seed, unsigned threads) {
  struct Job {
    int r;
    std::int64_t z;
  };
  std::vector<Job> jobs;
  for (int r = r_min; r <= r_max; ++r) {
    const auto lo = rough_disc_min_size(r);
    const auto hi = all_sizes ? rough_disc_max_size(r) : lo + 1;
    for (auto z = lo; z < hi; ++z) jobs.push_back({r, z});
  }

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto field = gen_rough_disc(jobs[i].r, jobs[i].z, seed);
        const auto res = build_fort(field, Cell{0, 0});
        if (res.report.fort_class == FortClass::Invalid || components(res.final_field).size() != 1) {
          throw ContractViolation("bench run r=" + std::to_string(jobs[i].r) + " did not produce a fort");
        }
        const double z = static_cast<double>(jobs[i].z);
        rows[i] = {jobs[i].r, jobs[i].z, res.stats.total_clock, static_cast<double>(res.stats.total_clock) / (z * z)};
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, threads ? threads : std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) { return a.z < b.z; });
  return rows;
}

std::optional<double> loglog_slope(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.z));
    const double y = std::log(static_cast<double>(r.steps));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double denom = n * sxx - sx * sx;
  if (denom <= 0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "r,z,steps,steps_per_z2\n";
  for (const auto& r : rows) {
    out << r.r << ',' << r.z << ',' << r.steps << ',' << std::setprecision(6) << r.steps_per_z2 << '\n';
  }
}

std::string render_frame(const Field& f, Cell robot, const FortAnchors& anchors, const Box& box) {
  std::string out;
  for (auto y = box.max_y; y >= box.min_y; --y) {
    for (auto x = box.min_x; x <= box.max_x; ++x) {
      const Cell c{x, y};
      char ch = f.contains(c) ? '#' : '.';
      if (c == anchors.first_cell) ch = 'F';
      if (c == anchors.marker) ch = 'M';
      if (c == robot) ch = 'R';
      out += ch;
    }
    out += '\n';
  }
  return out;
}

}  // namespace fortsim

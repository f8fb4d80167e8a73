#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "fortsim/build.hpp"

namespace fortsim {
namespace {

Field column(int n) {
  Field f;
  for (int i = 0; i < n; ++i) f.insert({0, i});
  return f;
}

TEST(BuildFort, DegenerateSpan) {
  const auto r = build_fort(column(3), {0, 0});
  EXPECT_TRUE(r.stats.degenerate);
  EXPECT_EQ(r.final_field, column(3));
  EXPECT_EQ(r.stats.total_clock, 0);
  EXPECT_EQ(r.stats.iterations, 0);
}

TEST(BuildFort, FourCollinearMakeABlock) {
  const auto r = build_fort(column(4), {0, 0});
  EXPECT_FALSE(r.stats.degenerate);
  EXPECT_EQ(r.final_field, (Field{{0, 2}, {1, 2}, {0, 1}, {1, 1}}));
  EXPECT_EQ(r.report.fort_class, FortClass::Perfect);
  EXPECT_EQ(r.stats.iterations, 2);
}

TEST(BuildFort, RoughDiscOfTwentyEight) {
  const auto r = build_fort(gen_rough_disc(3, 28), {0, 0});
  EXPECT_EQ(r.report.fort_class, FortClass::Perfect);
  EXPECT_EQ(r.report.brick_count, 28);
  EXPECT_EQ(r.report.fort_span, 14);
  EXPECT_EQ(r.report.wall_bricks, 8);
}

TEST(BuildFort, InputErrors) {
  EXPECT_THROW(build_fort(Field{}, {0, 0}), FieldError);
  EXPECT_THROW(build_fort(column(5), {3, 3}), FieldError);
  EXPECT_THROW(build_fort(Field{{0, 0}, {0, 1}, {0, 2}, {5, 5}}, {0, 0}), FieldError);
}

TEST(BuildFort, StatsAreConsistent) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto z = 20 + static_cast<std::int64_t>(seed) * 7;
    const auto r = build_fort(gen_random_connected(z, seed), {0, 0});
    EXPECT_EQ(r.stats.iterations, z - 2);
    const auto sum = std::accumulate(r.stats.per_procedure_clock.begin(), r.stats.per_procedure_clock.end(),
                                     std::int64_t{0}, [](std::int64_t a, const auto& kv) { return a + kv.second; });
    EXPECT_EQ(sum, r.stats.total_clock);
    EXPECT_LE(r.stats.max_sensed_radius, kSensingRadius);
    EXPECT_EQ(static_cast<std::int64_t>(r.final_field.size()), z);
    // search walks stay short next to the field's span
    EXPECT_LE(r.stats.max_walk_moves, 2 * r.report.fort_span);
  }
}

TEST(BuildFort, SmallFieldsFinish) {
  // Includes fields whose last free brick is pushed out from the final
  // perimeter cell and must still be found for the ferry.
  BuildOptions opts;
  opts.check = CheckLevel::Boundaries;
  for (std::int64_t z = 4; z <= 16; ++z) {
    for (std::uint64_t seed = 995; seed < 1025; ++seed) {
      const Field f = gen_random_connected(z, seed);
      const auto r = build_fort(f, {0, 0}, opts);
      EXPECT_TRUE(r.violations.empty()) << "z=" << z << " seed=" << seed;
      if (!r.stats.degenerate) {
        EXPECT_NE(r.report.fort_class, FortClass::Invalid) << "z=" << z << " seed=" << seed;
      }
    }
  }
}

TEST(BuildFort, FullChecksFindNothing) {
  BuildOptions opts;
  opts.check = CheckLevel::Full;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = build_fort(gen_random_connected(25 + static_cast<std::int64_t>(seed) * 11, seed), {0, 0}, opts);
    EXPECT_TRUE(r.violations.empty()) << to_json(r.violations.front());
    EXPECT_GT(r.checks_run, 0);
  }
}

TEST(BuildFort, Deterministic) {
  BuildOptions opts;
  opts.record_trace = true;
  const Field f = gen_random_connected(60, 9);
  const auto a = build_fort(f, {0, 0}, opts);
  const auto b = build_fort(f, {0, 0}, opts);
  EXPECT_EQ(summary_json(a), summary_json(b));
  EXPECT_EQ(a.trace, b.trace);
}

TEST(BuildFort, ListenerSeesEveryEvent) {
  BuildOptions opts;
  std::int64_t costly = 0;
  opts.listener = [&](const TraceEvent& e, const World&, const ControllerState&) {
    if (e.action == Action::Move || e.action == Action::Pick || e.action == Action::Drop) ++costly;
  };
  const auto r = build_fort(gen_rough_disc(3, 25), {0, 0}, opts);
  EXPECT_EQ(costly, r.stats.total_clock);
}

TEST(Bench, RowsAndSlope) {
  const auto rows = run_bench(3, 5, false, 0, 2);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1].z, rows[i].z);
  EXPECT_EQ(rows[0].z, 25);
  EXPECT_TRUE(loglog_slope(rows).has_value());
  EXPECT_FALSE(loglog_slope({rows[0]}).has_value());

  std::ostringstream csv;
  write_bench_csv(csv, rows);
  EXPECT_EQ(csv.str().rfind("r,z,steps,steps_per_z2\n", 0), 0u);
}

TEST(Bench, SlopeOfExactPowerLaw) {
  std::vector<BenchRow> rows;
  for (std::int64_t z : {10, 20, 40, 80}) rows.push_back({0, z, 3 * z * z, 3.0});
  EXPECT_NEAR(*loglog_slope(rows), 2.0, 1e-12);
}

TEST(RenderFrame, Symbols) {
  const Field f{{0, 0}, {1, 0}, {3, 0}};
  const FortAnchors a{{0, 0}, Cell{3, 0}, {1, 0}};
  EXPECT_EQ(render_frame(f, {2, 0}, a, Box{0, 3, -1, 0}), "F#RM\n....\n");
}

}  // namespace
}  // namespace fortsim

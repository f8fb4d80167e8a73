#include <gtest/gtest.h>

#include "fortsim/robot_env.hpp"

namespace fortsim {
namespace {

TEST(Window, Contents) {
  World solo(Field{{0, 0}}, {0, 0});
  const Window w = solo.observe_window();
  for (int x = -kSensingRadius; x <= kSensingRadius; ++x) {
    for (int y = -kSensingRadius; y <= kSensingRadius; ++y) {
      const Cell o{x, y};
      if (!Window::in_range(o)) continue;
      EXPECT_EQ(w.full(o), x == 0 && y == 0);
    }
  }
  EXPECT_THROW(w.full({9, 0}), ContractViolation);

  World edge(Field{{0, 0}, {4, 4}}, {0, 0});
  EXPECT_TRUE(edge.observe_window().full({4, 4}));
  EXPECT_TRUE(edge.sense({4, 4}));
  EXPECT_EQ(edge.max_sensed_radius(), 8);
}

TEST(Sense, BeyondRadiusIsAContractViolation) {
  World w(Field{{0, 0}, {9, 0}}, {0, 0});
  EXPECT_THROW(w.sense({9, 0}), ContractViolation);
  EXPECT_FALSE(w.sense({8, 0}));
}

TEST(Motion, Examples) {
  World w(Field{{0, 0}}, {0, 0}, Heading::East);
  w.step_forward();
  EXPECT_EQ(w.position(), (Cell{1, 0}));

  World n(Field{{0, 0}}, {0, 0});
  n.step_forward();
  EXPECT_EQ(n.position(), (Cell{0, 1}));

  n.step_forward();
  n.turn_left();
  n.turn_left();
  n.step_forward();
  n.step_forward();
  EXPECT_EQ(n.position(), (Cell{0, 0}));
  EXPECT_EQ(n.heading(), Heading::South);

  n.step_back();
  EXPECT_EQ(n.position(), (Cell{0, 1}));
  EXPECT_EQ(n.heading(), Heading::South);
}

TEST(Clock, TurnsAreFree) {
  World w(Field{{0, 0}}, {0, 0});
  w.turn_left();
  w.turn_right();
  EXPECT_EQ(w.clock(), 0);
  w.pick();
  w.step_forward();
  w.drop();
  EXPECT_EQ(w.clock(), 3);
}

TEST(Pick, Preconditions) {
  World w(Field{{0, 0}, {0, 1}}, {0, 0});
  w.pick();
  EXPECT_FALSE(w.field().contains({0, 0}));
  EXPECT_TRUE(w.carrying());
  EXPECT_THROW(w.pick(), ContractViolation);  // already heavy
  w.drop();
  w.turn_right();
  w.step_forward();
  EXPECT_THROW(w.pick(), ContractViolation);  // empty cell
}

TEST(Drop, Preconditions) {
  World w(Field{{0, 0}}, {0, 0});
  EXPECT_THROW(w.drop(), ContractViolation);
  w.pick();
  EXPECT_THROW(w.pick_at(Side::Front), ContractViolation);
  w.drop();
  EXPECT_TRUE(w.field().contains({0, 0}));
  EXPECT_FALSE(w.carrying());
  w.pick();
  w.step_forward();
  w.step_forward();
  w.drop_at(Side::Back);
  EXPECT_TRUE(w.field().contains({0, 1}));
  w.pick_at(Side::Back);
  w.drop_at(Side::Front);
  EXPECT_THROW(w.drop_at(Side::Front), ContractViolation);
}

TEST(Drop, LeftOfSouthIsEast) {
  World w(Field{{0, 0}}, {0, 0}, Heading::South);
  w.pick();
  w.drop_at(Side::Left);
  EXPECT_EQ(w.field(), (Field{{1, 0}}));
}

TEST(Conservation, AcrossPickAndDrop) {
  World w(Field{{0, 0}, {1, 0}, {2, 0}}, {0, 0}, Heading::East);
  EXPECT_TRUE(w.conservation_check());
  w.pick();
  EXPECT_EQ(w.field().size(), 2u);
  EXPECT_TRUE(w.conservation_check());
  w.drop_at(Side::Left);
  EXPECT_TRUE(w.conservation_check());
}

TEST(Trace, EventsAndTags) {
  World w(Field{{0, 0}}, {0, 0});
  w.record_trace(true);
  w.enter(Procedure::Sweep);
  w.pick();
  w.turn_right();
  w.step_forward();
  w.drop_at(Side::Left);
  const auto& t = w.trace();
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].action, Action::Pick);
  EXPECT_TRUE(t[0].carrying);
  EXPECT_EQ(t[1].clock, 1);  // turn keeps the clock
  EXPECT_EQ(t[2].position, (Cell{1, 0}));
  EXPECT_EQ(t[3].target, (Cell{1, 1}));
  EXPECT_EQ(t[3].tag, Procedure::Sweep);
  EXPECT_EQ(w.clock_by_procedure().at(Procedure::Sweep), 3);
}

TEST(Trace, ClockCountsCostlyEvents) {
  World w(Field{{0, 0}, {1, 0}}, {0, 0}, Heading::East);
  w.record_trace(true);
  w.pick();
  w.turn_left();
  w.turn_left();
  w.step_back();
  w.turn_right();
  w.drop_at(Side::Right);
  std::int64_t costly = 0;
  for (const auto& e : w.trace()) {
    if (e.action == Action::Move || e.action == Action::Pick || e.action == Action::Drop) ++costly;
  }
  EXPECT_EQ(costly, w.clock());
}

TEST(Jsonl, RoundTrip) {
  const TraceEvent e{42, Action::Drop, {-3, 7}, Heading::West, false, Procedure::ShiftBricks, {-3, 6}};
  EXPECT_EQ(trace_event_from_jsonl(to_jsonl(e)), e);
  EXPECT_THROW(trace_event_from_jsonl("{\"clock\": 1}"), std::exception);
  EXPECT_THROW(trace_event_from_jsonl("not json"), std::exception);
}

TEST(Names, ParseInverse) {
  for (auto p : kProcedures) EXPECT_EQ(parse_procedure(to_string(p)), p);
  for (auto a : {Action::Move, Action::TurnLeft, Action::TurnRight, Action::Pick, Action::Drop}) {
    EXPECT_EQ(parse_action(to_string(a)), a);
  }
  for (auto h : kCompass) EXPECT_EQ(parse_heading(to_string(h)), h);
  EXPECT_FALSE(parse_action("jump"));
}

}  // namespace
}  // namespace fortsim

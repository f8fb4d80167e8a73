#include "fortsim/robot_env.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

namespace fortsim {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Move: return "Move";
    case Action::TurnLeft: return "TurnLeft";
    case Action::TurnRight: return "TurnRight";
    case Action::Pick: return "Pick";
    case Action::Drop: return "Drop";
  }
  return "?";
}

std::string_view to_string(Procedure p) {
  switch (p) {
    case Procedure::TopLevel: return "top_level";
    case Procedure::Sweep: return "sweep";
    case Procedure::FindNextBrick: return "find_next_brick";
    case Procedure::ReturnToMarker: return "return_to_marker";
    case Procedure::ExtendFort: return "extend_fort";
    case Procedure::TraverseWall: return "traverse_wall";
    case Procedure::ShiftBricks: return "shift_bricks";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view s) {
  for (auto a : {Action::Move, Action::TurnLeft, Action::TurnRight, Action::Pick, Action::Drop}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::optional<Procedure> parse_procedure(std::string_view s) {
  for (auto p : kProcedures) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<Heading> parse_heading(std::string_view s) {
  for (auto h : kCompass) {
    if (to_string(h) == s) return h;
  }
  return std::nullopt;
}

std::string to_jsonl(const TraceEvent& e) {
  std::string out;
  out.reserve(128);
  out += "{\"clock\":";
  out += std::to_string(e.clock);
  out += ",\"action\":\"";
  out += to_string(e.action);
  out += "\",\"position\":[";
  out += std::to_string(e.position.x);
  out += ',';
  out += std::to_string(e.position.y);
  out += "],\"heading\":\"";
  out += to_string(e.heading);
  out += "\",\"carrying\":";
  out += e.carrying ? "true" : "false";
  out += ",\"procedure_tag\":\"";
  out += to_string(e.tag);
  out += "\",\"target\":[";
  out += std::to_string(e.target.x);
  out += ',';
  out += std::to_string(e.target.y);
  out += "]}";
  return out;
}

TraceEvent trace_event_from_jsonl(std::string_view line) {
  const auto j = nlohmann::json::parse(line);  // throws nlohmann::json::exception
  auto cell = [&](const char* key) {
    const auto& a = j.at(key);
    return Cell{a.at(0).get<std::int64_t>(), a.at(1).get<std::int64_t>()};
  };
  TraceEvent e;
  e.clock = j.at("clock").get<std::int64_t>();
  const auto action = parse_action(j.at("action").get<std::string>());
  const auto heading = parse_heading(j.at("heading").get<std::string>());
  const auto tag = parse_procedure(j.at("procedure_tag").get<std::string>());
  if (!action || !heading || !tag) throw std::invalid_argument("unknown enumerator in trace event");
  e.action = *action;
  e.heading = *heading;
  e.tag = *tag;
  e.position = cell("position");
  e.carrying = j.at("carrying").get<bool>();
  e.target = j.contains("target") ? cell("target") : e.position;
  return e;
}

World::World(Field initial, Cell start, Heading heading)
    : field_(std::move(initial)), pose_{start, heading, false}, initial_size_(field_.size()) {
  for (auto p : kProcedures) by_procedure_[p] = 0;
}

bool World::sense(Cell offset) {
  const auto d = static_cast<int>(norm1(offset));
  if (d > kSensingRadius) throw ContractViolation("sensing beyond radius 8");
  max_sensed_ = std::max(max_sensed_, d);
  return field_.contains(pose_.position + offset);
}

Window World::observe_window() {
  Window w;
  for (int dy = -kSensingRadius; dy <= kSensingRadius; ++dy) {
    const int reach = kSensingRadius - (dy < 0 ? -dy : dy);
    for (int dx = -reach; dx <= reach; ++dx) {
      const Cell o{dx, dy};
      w.set(o, field_.contains(pose_.position + o));
    }
  }
  max_sensed_ = kSensingRadius;
  return w;
}

void World::emit(Action a, Cell target) {
  if (a == Action::Move || a == Action::Pick || a == Action::Drop) {
    ++clock_;
    ++by_procedure_[tag_];
  }
  if (!recording_ && !listener_) return;
  TraceEvent e{clock_, a, pose_.position, pose_.heading, pose_.carrying, tag_, target};
  if (recording_) trace_.push_back(e);
  if (listener_) listener_(e, *this);
}

void World::step_forward() {
  pose_.position = pose_.position + unit(pose_.heading);
  emit(Action::Move, pose_.position);
}

void World::step_back() {
  pose_.position = pose_.position - unit(pose_.heading);
  emit(Action::Move, pose_.position);
}

void World::turn_left() {
  pose_.heading = fortsim::turn_left(pose_.heading);
  emit(Action::TurnLeft, pose_.position);
}

void World::turn_right() {
  pose_.heading = fortsim::turn_right(pose_.heading);
  emit(Action::TurnRight, pose_.position);
}

void World::pick_cell(Cell c) {
  if (pose_.carrying) throw ContractViolation("pick while carrying a brick");
  if (!field_.erase(c)) throw ContractViolation("pick on an empty cell");
  pose_.carrying = true;
  emit(Action::Pick, c);
}

void World::drop_cell(Cell c) {
  if (!pose_.carrying) throw ContractViolation("drop while light");
  if (field_.contains(c)) throw ContractViolation("drop on a full cell");
  field_.insert(c);
  pose_.carrying = false;
  emit(Action::Drop, c);
}

void World::pick() { pick_cell(pose_.position); }
void World::drop() { drop_cell(pose_.position); }
void World::pick_at(Side s) { pick_cell(pose_.position + unit(side_heading(pose_.heading, s))); }
void World::drop_at(Side s) { drop_cell(pose_.position + unit(side_heading(pose_.heading, s))); }

Procedure World::enter(Procedure p) { return std::exchange(tag_, p); }

bool World::conservation_check() const {
  return field_.size() + (pose_.carrying ? 1 : 0) == initial_size_;
}

}  // namespace fortsim

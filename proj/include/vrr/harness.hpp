#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vrr/automaton.hpp"
#include "vrr/display.hpp"
#include "vrr/errors.hpp"
#include "vrr/sensor.hpp"
#include "vrr/vwg.hpp"
#include "vrr/world.hpp"

namespace vrr {

// Inclusive axis-aligned cell rectangle.
struct Rect {
  int col_min = 0, row_min = 0, col_max = 0, row_max = 0;

  bool contains(const Cell& c) const {
    return c.col >= col_min && c.col <= col_max && c.row >= row_min && c.row <= row_max;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct DisplayParams {
  double ambient_leak = 0.0;
  int latency_steps = 0;
  double failure_prob = 0.0;
  bool blocks_motion = false;
};

// Everything a run needs, in one value. `sensors` feed the brain (their joint
// readings must match the brain's alphabet); `map_sensors` are additional
// instruments sampled for dead reckoning and mapping only. The mix must cover
// the union of both lists.
struct Scenario {
  std::string name;
  WorldModel world;
  PhysicalState initial_state;
  std::vector<std::string> sensors;
  std::vector<std::string> map_sensors;
  InformationAutomaton brain;
  std::string initial_istate;
  MixConfig mix;
  std::optional<VirtualWorldState> vwg;  // defaults to a black-box mirror of the real world
  std::map<std::string, DisplayParams> displays;
  std::optional<Rect> region;
  std::uint64_t seed = 0;
  int max_steps = 1;
};

struct TraceStep {
  int t = 0;
  PhysicalState x;                  // real state when observing
  VwgMode vwg_mode = VwgMode::BlackBox;
  PhysicalState virtual_x;          // black-box only
  size_t schedule_index = 0;        // white-box only
  std::map<std::string, std::string> y;
  std::string eta;                  // I-state after consuming y
  Action u = Action::Stop;
};

// The robot's own map, built at dead-reckoned poses over the real world's
// grid. Obstacle marks arise only from contact evidence (bump reading True,
// or a range reading of 1 meaning the cell directly ahead is blocked) at the
// believed frontier cell; range rays mark the traversed cells Free.
class RobotMap {
 public:
  enum class Label : std::uint8_t { Unknown, Free, Obstacle };

  RobotMap() = default;
  RobotMap(int width, int height)
      : width_(width), height_(height),
        labels_(static_cast<size_t>(width) * height, Label::Unknown) {}

  int width() const { return width_; }
  int height() const { return height_; }

  Label at(const Cell& c) const {
    if (!inside(c)) return Label::Unknown;
    return labels_[flat(c)];
  }

  void mark_free(const Cell& c) {
    // contact evidence wins over pass-through range evidence
    if (inside(c) && labels_[flat(c)] != Label::Obstacle) labels_[flat(c)] = Label::Free;
  }

  void mark_obstacle(const Cell& c) {
    if (inside(c)) labels_[flat(c)] = Label::Obstacle;
  }

  friend bool operator==(const RobotMap&, const RobotMap&) = default;

 private:
  bool inside(const Cell& c) const {
    return c.col >= 0 && c.col < width_ && c.row >= 0 && c.row < height_;
  }
  size_t flat(const Cell& c) const { return static_cast<size_t>(c.row) * width_ + c.col; }

  int width_ = 0;
  int height_ = 0;
  std::vector<Label> labels_;
};

enum class HaltReason : std::uint8_t { MaxSteps, StopAction, ScheduleEnd };

struct Trace {
  std::vector<TraceStep> steps;
  RobotMap map;
  WorldModel world;
  std::vector<PhysicalState> believed_path;
  HaltReason halt_reason = HaltReason::MaxSteps;
};

namespace detail {

struct ScenarioRuntime {
  std::vector<SensorModel> all_sensors;  // brain sensors first, then map sensors
  size_t brain_sensor_count = 0;
  int bump_slot = -1;     // positions within all_sensors, -1 when absent
  int range_slot = -1;
  int range_max = 0;
  int encoder_slot = -1;
};

inline ScenarioRuntime prepare_runtime(const Scenario& sc) {
  ScenarioRuntime rt;
  for (const auto& id : sc.sensors) rt.all_sensors.push_back(make_sensor(id));
  rt.brain_sensor_count = rt.all_sensors.size();
  for (const auto& id : sc.map_sensors) rt.all_sensors.push_back(make_sensor(id));

  for (size_t i = 0; i < rt.all_sensors.size(); ++i) {
    const std::string& id = rt.all_sensors[i].id;
    if (id == "bump" && rt.bump_slot == -1) rt.bump_slot = static_cast<int>(i);
    if (id == "encoder" && rt.encoder_slot == -1) rt.encoder_slot = static_cast<int>(i);
    if (id.rfind("range:", 0) == 0 && rt.range_slot == -1) {
      rt.range_slot = static_cast<int>(i);
      rt.range_max = std::stoi(id.substr(6));
    }
  }
  return rt;
}

inline void check_scenario(const Scenario& sc, const ScenarioRuntime& rt) {
  if (sc.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  require_valid_state(sc.initial_state, sc.world);
  const size_t n = sc.brain.istates.size();
  if (sc.brain.outputs.size() != n || sc.brain.delta.size() != n)
    throw ConfigError("brain transition or output table is not total");
  for (const auto& row : sc.brain.delta)
    if (row.size() != sc.brain.alphabet.size())
      throw ConfigError("brain transition table is not total");
  for (const auto& sensor : rt.all_sensors)
    if (sc.mix.find(sensor.id) == sc.mix.end())
      throw ConfigError("mix does not cover sensor " + sensor.id);

  std::vector<SensorModel> brain_sensors(rt.all_sensors.begin(),
                                         rt.all_sensors.begin() + rt.brain_sensor_count);
  auto expected = product_alphabet(brain_sensors);
  auto actual = sc.brain.alphabet;
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  if (expected != actual)
    throw ConfigError("brain alphabet does not match the sensor product alphabet");
}

}  // namespace detail

// Builds the scenario's display bank; per-display RNG streams are derived
// from the scenario seed and the sensor id, so reruns are bit-identical.
inline std::map<std::string, DisplayModel> make_displays(const Scenario& sc) {
  std::map<std::string, DisplayModel> displays;
  for (const auto& [id, params] : sc.displays) {
    displays.emplace(id, DisplayModel(make_sensor(id), params.ambient_leak,
                                      params.latency_steps, params.failure_prob,
                                      sc.seed ^ stable_hash(id), params.blocks_motion));
  }
  return displays;
}

// Deterministic closed loop: observe (mixed) -> advance the I-state -> emit
// the action -> move the real robot -> advance the VWG. Halts on Stop, on an
// exhausted white-box schedule (per its policy), or after max_steps. Builds
// the robot's occupancy map from dead-reckoned poses as a side product.
inline Trace run_scenario(const Scenario& sc) {
  const auto rt = detail::prepare_runtime(sc);
  detail::check_scenario(sc, rt);

  VirtualWorldState vwg = sc.vwg.value_or(
      VirtualWorldState::black_box(sc.world, sc.initial_state));
  auto displays = make_displays(sc);
  MixConfig mix = sc.mix;

  Trace trace;
  trace.world = sc.world;
  trace.map = RobotMap(sc.world.width(), sc.world.height());

  PhysicalState x = sc.initial_state;
  int eta = sc.brain.istate_index(sc.initial_istate);

  PhysicalState believed = sc.initial_state;
  bool pending_forward = false;
  Heading pending_heading = believed.heading;

  trace.halt_reason = HaltReason::MaxSteps;
  for (int t = 0; t < sc.max_steps; ++t) {
    if (vwg.schedule_exhausted()) {
      if (vwg.on_schedule_end == ScheduleEndPolicy::Stop) {
        trace.halt_reason = HaltReason::ScheduleEnd;
        break;
      }
      for (auto& [id, route] : mix) route = Route::Real;
      vwg.mode = VwgMode::BlackBox;
      vwg.virtual_room = sc.world;
      vwg.virtual_state = x;
    }

    const auto y = observe_mixed(mix, displays, rt.all_sensors, rt.brain_sensor_count,
                                 vwg, x, sc.world);

    // dead reckoning: this step's bump/encoder reading resolves whether the
    // previous Forward actually advanced
    if (pending_forward) {
      bool moved = true;
      if (rt.encoder_slot >= 0) moved = y[rt.encoder_slot] == "1";
      else if (rt.bump_slot >= 0) moved = y[rt.bump_slot] == "False";
      if (moved) {
        const Cell d = heading_delta(pending_heading);
        believed.pos = {believed.pos.col + d.col, believed.pos.row + d.row};
      }
      pending_forward = false;
    }
    trace.believed_path.push_back(believed);

    trace.map.mark_free(believed.pos);
    const Cell ahead = heading_delta(believed.heading);
    const Cell frontier{believed.pos.col + ahead.col, believed.pos.row + ahead.row};
    if (rt.bump_slot >= 0 && y[rt.bump_slot] == "True") trace.map.mark_obstacle(frontier);
    if (rt.range_slot >= 0) {
      const std::string& r = y[rt.range_slot];
      const int seen_free = r == "Inf" ? rt.range_max : std::stoi(r) - 1;
      for (int k = 1; k <= seen_free; ++k)
        trace.map.mark_free({believed.pos.col + k * ahead.col,
                             believed.pos.row + k * ahead.row});
      if (r == "1") trace.map.mark_obstacle(frontier);
    }

    std::vector<std::string> brain_parts(y.begin(), y.begin() + rt.brain_sensor_count);
    eta = sc.brain.step(eta, join_symbols(brain_parts));
    const Action u = sc.brain.outputs[eta];

    TraceStep step;
    step.t = t;
    step.x = x;
    step.vwg_mode = vwg.mode;
    step.virtual_x = vwg.virtual_state;
    step.schedule_index = vwg.schedule_index;
    for (size_t i = 0; i < rt.all_sensors.size(); ++i)
      step.y[rt.all_sensors[i].id] = y[i];
    step.eta = sc.brain.istates[eta];
    step.u = u;
    trace.steps.push_back(std::move(step));

    if (u == Action::Stop) {
      trace.halt_reason = HaltReason::StopAction;
      break;
    }

    // a firing contact display physically blocks the real Forward as well
    bool contact_blocks = false;
    if (virtual_forward_blocked(vwg, u)) {
      const auto route = mix.find("bump");
      const auto disp = displays.find("bump");
      contact_blocks = route != mix.end() && route->second == Route::Virtual &&
                       disp != displays.end() && disp->second.blocks_motion();
    }

    step_vwg(vwg, x, u);
    if (contact_blocks) {
      PhysicalState blocked = x;
      blocked.bumped = true;
      x = blocked;
    } else {
      x = transition(x, u, sc.world);
    }

    if (u == Action::Forward) {
      pending_forward = true;
      pending_heading = believed.heading;
    } else if (u == Action::TurnLeft) {
      believed.heading = turn_left(believed.heading);
    } else if (u == Action::TurnRight) {
      believed.heading = turn_right(believed.heading);
    }
  }
  return trace;
}

// Walls off everything outside `region` in a copy of the room: the virtual
// room a confined robot is made to believe in.
inline WorldModel confine_room(const WorldModel& room, const Rect& region) {
  std::set<Cell> obstacles = room.obstacles();
  for (int row = 0; row < room.height(); ++row)
    for (int col = 0; col < room.width(); ++col)
      if (!region.contains({col, row})) obstacles.insert({col, row});
  return WorldModel(room.width(), room.height(), std::move(obstacles),
                    room.name().empty() ? "confined" : room.name() + "-confined");
}

// The bump-display confinement scenario: the robot runs its vacuum controller
// in `full_room` while an ideal contact display, driven by a black-box VWG
// whose virtual room is `full_room` with everything outside `region` walled
// off, fires whenever the virtual Forward is blocked. The range finder and
// encoder stay real.
inline Scenario neato_scenario(const WorldModel& full_room, const Rect& region,
                               PhysicalState initial, std::uint64_t seed = 7) {
  require_valid_state(initial, full_room);
  for (int row = region.row_min; row <= region.row_max; ++row)
    for (int col = region.col_min; col <= region.col_max; ++col)
      if (full_room.blocked({col, row}))
        throw DomainError("confinement region not contained in free space");
  if (!region.contains(initial.pos))
    throw DomainError("initial state outside the confinement region");

  Scenario sc;
  sc.name = "neato-confinement";
  sc.world = full_room;
  sc.initial_state = initial;
  sc.sensors = {"bump", "proximity:1"};
  sc.map_sensors = {"range:4", "encoder"};
  sc.brain = vacuum_brain();
  sc.initial_istate = "SweepFwd";
  sc.mix = {{"bump", Route::Virtual},
            {"proximity:1", Route::Real},
            {"range:4", Route::Real},
            {"encoder", Route::Real}};
  sc.vwg = VirtualWorldState::black_box(confine_room(full_room, region), initial);
  sc.displays["bump"] = DisplayParams{0.0, 0, 0.0, /*blocks_motion=*/true};
  sc.region = region;
  sc.seed = seed;
  sc.max_steps = 10 * full_room.free_cell_count();
  return sc;
}

// A brain under test, visible only through its emitted actions.
class OpaqueBrain {
 public:
  virtual ~OpaqueBrain() = default;
  virtual void reset() = 0;
  virtual Action current_action() const = 0;
  virtual Action feed(const std::string& symbol) = 0;
};

class AutomatonBrain : public OpaqueBrain {
 public:
  AutomatonBrain(InformationAutomaton a, std::string initial_istate)
      : automaton_(std::move(a)), initial_(automaton_.istate_index(initial_istate)) {
    reset();
  }

  void reset() override { current_ = initial_; }
  Action current_action() const override { return automaton_.outputs[current_]; }
  Action feed(const std::string& symbol) override {
    current_ = automaton_.step(current_, symbol);
    return automaton_.outputs[current_];
  }

 private:
  InformationAutomaton automaton_;
  int initial_ = 0;
  int current_ = 0;
};

// Response table of a black-box probe battery: for each word, the initial
// action followed by the action emitted after each symbol. The brain is reset
// between probes.
inline std::vector<std::vector<Action>> probe_black_box(
    OpaqueBrain& brain, const std::vector<ObservationWord>& probes) {
  if (probes.empty()) throw DomainError("probe battery is empty");
  std::vector<std::vector<Action>> table;
  table.reserve(probes.size());
  for (const auto& probe : probes) {
    brain.reset();
    std::vector<Action> row{brain.current_action()};
    for (const auto& symbol : probe) row.push_back(brain.feed(symbol));
    table.push_back(std::move(row));
  }
  return table;
}

struct ConfinementMetrics {
  double confinement_ratio = 0.0;
  int visited_count = 0;
  double map_agreement = 0.0;
};

// confinement_ratio: fraction of distinct visited real cells inside R.
// map_agreement: fraction of the world's free cells the robot's map labels
// Free.
inline ConfinementMetrics confinement_metrics(const Trace& trace, const Rect& region) {
  if (trace.steps.empty()) throw DomainError("confinement metrics of an empty trace");

  std::set<Cell> visited;
  for (const auto& step : trace.steps) visited.insert(step.x.pos);

  ConfinementMetrics m;
  m.visited_count = static_cast<int>(visited.size());
  int inside = 0;
  for (const Cell& c : visited)
    if (region.contains(c)) ++inside;
  m.confinement_ratio = static_cast<double>(inside) / static_cast<double>(visited.size());

  int free_cells = 0, agreed = 0;
  for (int row = 0; row < trace.world.height(); ++row)
    for (int col = 0; col < trace.world.width(); ++col) {
      const Cell c{col, row};
      if (!trace.world.free(c)) continue;
      ++free_cells;
      if (trace.map.at(c) == RobotMap::Label::Free) ++agreed;
    }
  m.map_agreement = free_cells == 0 ? 1.0
                                    : static_cast<double>(agreed) / free_cells;
  return m;
}

}  // namespace vrr

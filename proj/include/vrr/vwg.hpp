#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrr/display.hpp"
#include "vrr/errors.hpp"
#include "vrr/sensor.hpp"
#include "vrr/world.hpp"

namespace vrr {

enum class VwgMode : std::uint8_t { BlackBox, WhiteBox };

enum class ScheduleEndPolicy : std::uint8_t { Stop, SwitchAllReal };

// The virtual world generator's own state. A black-box VWG maintains a full
// virtual room plus a virtual robot state and mirrors the real dynamics on
// them. A white-box VWG skips world fidelity entirely and emits a scheduled
// word of joint observation symbols.
struct VirtualWorldState {
  VwgMode mode = VwgMode::BlackBox;

  // BlackBox
  WorldModel virtual_room;
  PhysicalState virtual_state;

  // WhiteBox
  std::vector<std::string> schedule;
  size_t schedule_index = 0;
  ScheduleEndPolicy on_schedule_end = ScheduleEndPolicy::Stop;

  static VirtualWorldState black_box(WorldModel room, PhysicalState start) {
    VirtualWorldState s;
    s.mode = VwgMode::BlackBox;
    require_valid_state(start, room);
    s.virtual_room = std::move(room);
    s.virtual_state = start;
    return s;
  }

  static VirtualWorldState white_box(std::vector<std::string> schedule,
                                     ScheduleEndPolicy policy = ScheduleEndPolicy::Stop) {
    VirtualWorldState s;
    s.mode = VwgMode::WhiteBox;
    s.schedule = std::move(schedule);
    s.on_schedule_end = policy;
    return s;
  }

  bool schedule_exhausted() const {
    return mode == VwgMode::WhiteBox && schedule_index >= schedule.size();
  }
};

// Renders the display output for one sensor. BlackBox: the reading the sensor
// would produce in the virtual room. WhiteBox: the sensor's component of the
// current scheduled joint symbol (`slot` is the sensor's position in the
// brain-feeding sensor list).
inline DisplayOutput render(const VirtualWorldState& s, const PhysicalState& /*x*/,
                            const SensorModel& sensor, size_t slot) {
  if (s.mode == VwgMode::BlackBox)
    return {sensor.id, sensor.sense(s.virtual_state, s.virtual_room)};
  if (s.schedule_exhausted())
    throw ConfigError("white-box schedule exhausted while rendering " + sensor.id);
  const auto parts = split_symbol(s.schedule[s.schedule_index]);
  if (slot >= parts.size())
    throw ConfigError("white-box schedule has no component for sensor " + sensor.id);
  return {sensor.id, parts[slot]};
}

// A per-sensor rendering function, for callers that want to carry renderers
// around as values or swap in custom ones.
using Renderer = std::function<DisplayOutput(const VirtualWorldState&, const PhysicalState&)>;

inline Renderer default_renderer(SensorModel sensor, size_t slot) {
  return [sensor = std::move(sensor), slot](const VirtualWorldState& s,
                                            const PhysicalState& x) {
    return render(s, x, sensor, slot);
  };
}

// True when executing `u` against the virtual room would block: the
// moment a contact display fires.
inline bool virtual_forward_blocked(const VirtualWorldState& s, Action u) {
  if (s.mode != VwgMode::BlackBox || u != Action::Forward) return false;
  return transition(s.virtual_state, u, s.virtual_room).bumped;
}

// Advances the virtual world after the robot executed `u`. The tracked real
// state is accepted for API symmetry; the black-box VWG evolves by mirroring
// the transition function in the virtual room (tracking is assumed exact).
inline void step_vwg(VirtualWorldState& s, const PhysicalState& /*x_next*/, Action u) {
  if (s.mode == VwgMode::BlackBox) {
    s.virtual_state = transition(s.virtual_state, u, s.virtual_room);
  } else {
    s.schedule_index += 1;
  }
}

// One mixed observation: per sensor, Real routes read the physical world and
// Virtual routes read the display fed by the renderer. `sensors` lists the
// brain-feeding sensors first (their positions are the white-box slots),
// followed by any mapping-only instruments (`brain_sensor_count` marks the
// split). Displays default to ideal when absent from `displays`.
inline std::vector<std::string> observe_mixed(
    const MixConfig& mix, std::map<std::string, DisplayModel>& displays,
    const std::vector<SensorModel>& sensors, size_t brain_sensor_count,
    const VirtualWorldState& s, const PhysicalState& x, const WorldModel& w) {
  std::vector<std::string> tuple;
  tuple.reserve(sensors.size());
  for (size_t i = 0; i < sensors.size(); ++i) {
    const SensorModel& sensor = sensors[i];
    const auto route = mix.find(sensor.id);
    if (route == mix.end())
      throw ConfigError("mix does not cover sensor " + sensor.id);
    if (route->second == Route::Real) {
      tuple.push_back(sensor.sense(x, w));
      continue;
    }
    const size_t slot = i < brain_sensor_count ? i : static_cast<size_t>(-1);
    const DisplayOutput d = render(s, x, sensor, slot);
    auto it = displays.find(sensor.id);
    if (it == displays.end())
      it = displays.emplace(sensor.id, DisplayModel::ideal(sensor)).first;
    tuple.push_back(it->second.spoof(d, x, w));
  }
  return tuple;
}

inline std::vector<std::string> observe_mixed(
    const MixConfig& mix, std::map<std::string, DisplayModel>& displays,
    const std::vector<SensorModel>& sensors, const VirtualWorldState& s,
    const PhysicalState& x, const WorldModel& w) {
  return observe_mixed(mix, displays, sensors, sensors.size(), s, x, w);
}

}  // namespace vrr

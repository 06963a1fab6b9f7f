#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrr/automaton.hpp"
#include "vrr/errors.hpp"
#include "vrr/harness.hpp"
#include "vrr/partition.hpp"
#include "vrr/world.hpp"

namespace vrr {

using json = nlohmann::json;

// --- world ---

inline json to_json(const WorldModel& w) {
  json obstacles = json::array();
  for (const Cell& c : w.obstacles()) obstacles.push_back({c.col, c.row});
  return {{"width", w.width()},
          {"height", w.height()},
          {"obstacles", obstacles},
          {"name", w.name()}};
}

inline WorldModel world_from_json(const json& j) {
  std::set<Cell> obstacles;
  for (const auto& pair : j.value("obstacles", json::array()))
    obstacles.insert({pair.at(0).get<int>(), pair.at(1).get<int>()});
  return WorldModel(j.at("width").get<int>(), j.at("height").get<int>(),
                    std::move(obstacles), j.value("name", ""));
}

// --- physical state ---

inline json to_json(const PhysicalState& x) {
  return {{"pos", {x.pos.col, x.pos.row}},
          {"heading", to_string(x.heading)},
          {"bumped", x.bumped}};
}

inline PhysicalState state_from_json(const json& j) {
  PhysicalState x;
  x.pos = {j.at("pos").at(0).get<int>(), j.at("pos").at(1).get<int>()};
  x.heading = heading_from_string(j.at("heading").get<std::string>());
  x.bumped = j.value("bumped", false);
  x.odometer = j.value("odometer", 0L);
  return x;
}

// --- information automaton ---
// {"istates":[...], "alphabet":[...], "delta":{"q":{"y":"q'"}}, "output":{"q":"Action"}}
// Non-deterministic entries (arrays) are rejected: plans must be deterministic.

inline json to_json(const InformationAutomaton& a) {
  json delta = json::object();
  for (size_t i = 0; i < a.istates.size(); ++i) {
    json row = json::object();
    for (size_t s = 0; s < a.alphabet.size(); ++s)
      row[a.alphabet[s]] = a.istates[a.delta[i][s]];
    delta[a.istates[i]] = std::move(row);
  }
  json output = json::object();
  for (size_t i = 0; i < a.istates.size(); ++i)
    output[a.istates[i]] = to_string(a.outputs[i]);
  return {{"istates", a.istates},
          {"alphabet", a.alphabet},
          {"delta", delta},
          {"output", output}};
}

inline InformationAutomaton automaton_from_json(const json& j) {
  InformationAutomaton a;
  a.istates = j.at("istates").get<std::vector<std::string>>();
  a.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  if (a.istates.empty()) throw ConfigError("automaton needs at least one I-state");

  a.delta.assign(a.istates.size(), std::vector<int>(a.alphabet.size(), -1));
  const json& delta = j.at("delta");
  for (size_t i = 0; i < a.istates.size(); ++i) {
    if (!delta.contains(a.istates[i]))
      throw ConfigError("delta missing row for I-state " + a.istates[i]);
    const json& row = delta.at(a.istates[i]);
    for (size_t s = 0; s < a.alphabet.size(); ++s) {
      if (!row.contains(a.alphabet[s]))
        throw ConfigError("delta(" + a.istates[i] + ", " + a.alphabet[s] + ") missing");
      const json& entry = row.at(a.alphabet[s]);
      if (!entry.is_string())
        throw ConfigError("stochastic or malformed plan entry at delta(" + a.istates[i] +
                          ", " + a.alphabet[s] + "); expected a single I-state");
      a.delta[i][s] = a.istate_index(entry.get<std::string>());
    }
  }

  a.outputs.assign(a.istates.size(), Action::Stop);
  if (j.contains("output")) {
    const json& output = j.at("output");
    for (size_t i = 0; i < a.istates.size(); ++i) {
      if (!output.contains(a.istates[i]))
        throw ConfigError("output missing for I-state " + a.istates[i]);
      const json& entry = output.at(a.istates[i]);
      if (!entry.is_string())
        throw ConfigError("stochastic or malformed plan output at " + a.istates[i]);
      a.outputs[i] = action_from_string(entry.get<std::string>());
    }
  }
  return a;
}

// --- virtual space ---

inline json to_json(const VirtualSpace& vs) {
  json cells = json::array();
  for (size_t c = 0; c < vs.cell_count(); ++c)
    cells.push_back({{"id", c},
                     {"members", vs.partition.cells[c]},
                     {"observations", vs.cell_observations[c]}});
  json transitions = json::array();
  for (size_t c = 0; c < vs.cell_count(); ++c)
    for (Action a : kAllActions) {
      const size_t ai = static_cast<size_t>(a);
      transitions.push_back({{"cell", c},
                             {"action", to_string(a)},
                             {"successors", vs.induced_transitions[c][ai]},
                             {"deterministic", vs.deterministic_flags[c][ai]}});
    }
  return {{"sensors", vs.sensor_ids},
          {"num_states", vs.num_states},
          {"cells", cells},
          {"transitions", transitions}};
}

inline VirtualSpace virtual_space_from_json(const json& j) {
  VirtualSpace vs;
  vs.sensor_ids = j.at("sensors").get<std::vector<std::string>>();
  vs.num_states = j.at("num_states").get<StateId>();
  const json& cells = j.at("cells");
  vs.partition.cell_of.assign(vs.num_states, 0);
  for (const auto& cell : cells) {
    const auto members = cell.at("members").get<std::vector<StateId>>();
    const auto id = cell.at("id").get<std::uint32_t>();
    if (id != vs.partition.cells.size()) throw ConfigError("cell ids out of order");
    for (StateId s : members) vs.partition.cell_of.at(s) = id;
    vs.partition.cells.push_back(members);
    vs.cell_observations.push_back(cell.at("observations").get<std::vector<std::string>>());
  }
  vs.induced_transitions.resize(vs.cell_count());
  vs.deterministic_flags.resize(vs.cell_count());
  for (const auto& tr : j.at("transitions")) {
    const auto c = tr.at("cell").get<size_t>();
    const auto ai = static_cast<size_t>(action_from_string(tr.at("action").get<std::string>()));
    vs.induced_transitions.at(c)[ai] = tr.at("successors").get<std::vector<std::uint32_t>>();
    vs.deterministic_flags.at(c)[ai] = tr.at("deterministic").get<bool>();
  }
  return vs;
}

// --- scenario ---

inline Route route_from_string(const std::string& s) {
  if (s == "Real") return Route::Real;
  if (s == "Virtual") return Route::Virtual;
  throw ConfigError("route must be Real or Virtual, got " + s);
}

inline json to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["world"] = to_json(sc.world);
  j["initial_state"] = to_json(sc.initial_state);
  j["sensors"] = sc.sensors;
  j["map_sensors"] = sc.map_sensors;
  j["brain"] = to_json(sc.brain);
  j["initial_istate"] = sc.initial_istate;
  json mix = json::object();
  for (const auto& [id, route] : sc.mix)
    mix[id] = route == Route::Real ? "Real" : "Virtual";
  j["mix"] = mix;
  if (sc.vwg) {
    json v;
    if (sc.vwg->mode == VwgMode::BlackBox) {
      v["mode"] = "BlackBox";
      v["virtual_world"] = to_json(sc.vwg->virtual_room);
      v["virtual_state"] = to_json(sc.vwg->virtual_state);
    } else {
      v["mode"] = "WhiteBox";
      v["schedule"] = sc.vwg->schedule;
      v["on_schedule_end"] =
          sc.vwg->on_schedule_end == ScheduleEndPolicy::Stop ? "stop" : "all-real";
    }
    j["vwg"] = v;
  }
  json displays = json::object();
  for (const auto& [id, p] : sc.displays)
    displays[id] = {{"ambient_leak", p.ambient_leak},
                    {"latency_steps", p.latency_steps},
                    {"failure_prob", p.failure_prob},
                    {"blocks_motion", p.blocks_motion}};
  j["displays"] = displays;
  if (sc.region)
    j["region"] = {sc.region->col_min, sc.region->row_min, sc.region->col_max,
                   sc.region->row_max};
  j["seed"] = sc.seed;
  j["max_steps"] = sc.max_steps;
  return j;
}

inline Scenario scenario_from_json(const json& j, const std::string& base_dir = "") {
  Scenario sc;
  sc.name = j.value("name", "");
  sc.world = world_from_json(j.at("world"));
  sc.initial_state = state_from_json(j.at("initial_state"));
  sc.sensors = j.at("sensors").get<std::vector<std::string>>();
  sc.map_sensors = j.value("map_sensors", std::vector<std::string>{});

  if (j.contains("brain")) {
    sc.brain = automaton_from_json(j.at("brain"));
  } else if (j.contains("brain_file")) {
    const std::string rel = j.at("brain_file").get<std::string>();
    const std::string path = base_dir.empty() ? rel : base_dir + "/" + rel;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open brain file " + path);
    sc.brain = automaton_from_json(json::parse(in));
  } else {
    throw ConfigError("scenario needs 'brain' or 'brain_file'");
  }

  sc.initial_istate = j.at("initial_istate").get<std::string>();
  for (const auto& [id, route] : j.at("mix").items())
    sc.mix[id] = route_from_string(route.get<std::string>());

  if (j.contains("vwg")) {
    const json& v = j.at("vwg");
    const std::string mode = v.at("mode").get<std::string>();
    if (mode == "BlackBox") {
      sc.vwg = VirtualWorldState::black_box(
          world_from_json(v.at("virtual_world")),
          v.contains("virtual_state") ? state_from_json(v.at("virtual_state"))
                                      : sc.initial_state);
    } else if (mode == "WhiteBox") {
      const std::string policy = v.value("on_schedule_end", "stop");
      sc.vwg = VirtualWorldState::white_box(
          v.at("schedule").get<std::vector<std::string>>(),
          policy == "all-real" ? ScheduleEndPolicy::SwitchAllReal
                               : ScheduleEndPolicy::Stop);
    } else {
      throw ConfigError("vwg mode must be BlackBox or WhiteBox");
    }
  }

  const json display_params = j.value("displays", json::object());
  for (const auto& [id, p] : display_params.items()) {
    DisplayParams params;
    params.ambient_leak = p.value("ambient_leak", 0.0);
    params.latency_steps = p.value("latency_steps", 0);
    params.failure_prob = p.value("failure_prob", 0.0);
    params.blocks_motion = p.value("blocks_motion", false);
    sc.displays[id] = params;
  }

  if (j.contains("region")) {
    const auto& r = j.at("region");
    sc.region = Rect{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
                     r.at(3).get<int>()};
  }
  sc.seed = j.value("seed", 0ull);
  sc.max_steps = j.at("max_steps").get<int>();
  return sc;
}

// --- trace ---

inline json to_json(const TraceStep& step) {
  json s;
  if (step.vwg_mode == VwgMode::BlackBox) {
    s = {{"mode", "BlackBox"},
         {"x", {step.virtual_x.pos.col, step.virtual_x.pos.row,
                to_string(step.virtual_x.heading), step.virtual_x.bumped}}};
  } else {
    s = {{"mode", "WhiteBox"}, {"index", step.schedule_index}};
  }
  return {{"t", step.t},
          {"x", {step.x.pos.col, step.x.pos.row, to_string(step.x.heading), step.x.bumped}},
          {"s", s},
          {"y", step.y},
          {"eta", step.eta},
          {"u", to_string(step.u)}};
}

// One JSON object per line, one line per step.
inline std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& step : trace.steps) {
    out += to_json(step).dump();
    out += '\n';
  }
  return out;
}

// --- maps ---

// P2 PGM, top row of the image = northernmost grid row.
// 0 = Obstacle, 128 = Unknown, 255 = Free.
inline std::string map_to_pgm(const RobotMap& map) {
  std::ostringstream out;
  out << "P2\n" << map.width() << " " << map.height() << "\n255\n";
  for (int row = map.height() - 1; row >= 0; --row) {
    for (int col = 0; col < map.width(); ++col) {
      int v = 128;
      switch (map.at({col, row})) {
        case RobotMap::Label::Obstacle: v = 0; break;
        case RobotMap::Label::Unknown: v = 128; break;
        case RobotMap::Label::Free: v = 255; break;
      }
      out << v << (col + 1 == map.width() ? "" : " ");
    }
    out << "\n";
  }
  return out.str();
}

// '#' = Obstacle, '.' = Free, '?' = Unknown.
inline std::string map_to_ascii(const RobotMap& map) {
  std::string out;
  for (int row = map.height() - 1; row >= 0; --row) {
    for (int col = 0; col < map.width(); ++col) {
      switch (map.at({col, row})) {
        case RobotMap::Label::Obstacle: out += '#'; break;
        case RobotMap::Label::Unknown: out += '?'; break;
        case RobotMap::Label::Free: out += '.'; break;
      }
    }
    out += '\n';
  }
  return out;
}

inline json to_json(const ConfinementMetrics& m) {
  return {{"confinement_ratio", m.confinement_ratio},
          {"visited_count", m.visited_count},
          {"map_agreement", m.map_agreement}};
}

// --- files ---

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << content;
}

}  // namespace vrr

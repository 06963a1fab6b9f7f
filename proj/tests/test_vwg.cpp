#include <doctest.h>

#include <map>
#include <random>

#include "helpers.hpp"
#include "vrr/vrr.hpp"

using namespace vrr;

namespace {

MixConfig uniform_mix(const std::vector<SensorModel>& sensors, Route route) {
  MixConfig mix;
  for (const auto& s : sensors) mix[s.id] = route;
  return mix;
}

}  // namespace

TEST_CASE("black-box rendering mirrors the virtual room, not the real one") {
  const WorldModel real(5, 5);
  const WorldModel virtual_room(3, 3);
  auto vwg = VirtualWorldState::black_box(virtual_room,
                                          PhysicalState{{1, 1}, Heading::North, false, 0});

  // one step from the virtual north wall
  step_vwg(vwg, {}, Action::Forward);
  CHECK(vwg.virtual_state.pos == Cell{1, 2});
  CHECK(render(vwg, {}, range_sensor(4), 0).payload == "1");

  // the next forward is blocked only virtually
  step_vwg(vwg, {}, Action::Forward);
  CHECK(vwg.virtual_state.bumped);
  CHECK(render(vwg, {}, bump_sensor(), 0).payload == "True");
}

TEST_CASE("renderers can be carried around as per-sensor values") {
  const WorldModel virtual_room(3, 3);
  const auto vwg = VirtualWorldState::black_box(
      virtual_room, PhysicalState{{1, 1}, Heading::North, false, 0});
  const Renderer bump_renderer = default_renderer(bump_sensor(), 0);
  const DisplayOutput d = bump_renderer(vwg, {});
  CHECK(d.sensor_id == "bump");
  CHECK(d.payload == "False");
}

TEST_CASE("white-box rendering replays the scheduled word component-wise") {
  auto vwg = VirtualWorldState::white_box({"True,False", "False,True"});
  CHECK(render(vwg, {}, bump_sensor(), 0).payload == "True");
  CHECK(render(vwg, {}, proximity_sensor(1), 1).payload == "False");
  step_vwg(vwg, {}, Action::Forward);
  CHECK(render(vwg, {}, bump_sensor(), 0).payload == "False");
  step_vwg(vwg, {}, Action::Forward);
  CHECK(vwg.schedule_exhausted());
  CHECK_THROWS_AS(render(vwg, {}, bump_sensor(), 0), ConfigError);
  CHECK_THROWS_AS(render(VirtualWorldState::white_box({"True,False"}), {},
                         range_sensor(4), 7),
                  ConfigError);
}

TEST_CASE("an ideal contact display passes the payload through") {
  const WorldModel w(5, 5);
  const PhysicalState x{{2, 2}, Heading::North, false, 0};
  auto display = DisplayModel::ideal(bump_sensor());
  CHECK(display.spoof({"bump", "True"}, x, w) == "True");
  CHECK(display.spoof({"bump", "False"}, x, w) == "False");
  CHECK_THROWS_AS(display.spoof({"bump", "2"}, x, w), DomainError);
}

TEST_CASE("full ambient leak degenerates the display to the real sensor") {
  const WorldModel w(5, 5);
  const PhysicalState x{{2, 2}, Heading::North, false, 0};
  DisplayModel display(bump_sensor(), 1.0, 0, 0.0, 42);
  for (int i = 0; i < 20; ++i) CHECK(display.spoof({"bump", "True"}, x, w) == "False");

  DisplayModel noisy(bump_sensor(), 1.0, 2, 0.9, 43);
  for (int i = 0; i < 20; ++i) CHECK(noisy.spoof({"bump", "True"}, x, w) == "False");
}

TEST_CASE("latency presents the payload rendered that many steps earlier") {
  const WorldModel w(3, 3);
  const PhysicalState x{{1, 1}, Heading::North, false, 0};

  DisplayModel two(encoder_delta_sensor(), 0.0, 2, 0.0, 0);
  std::vector<std::string> observed;
  for (const char* payload : {"0", "0", "1", "1"})
    observed.push_back(two.spoof({"encoder", payload}, x, w));
  CHECK(observed == std::vector<std::string>{"0", "0", "0", "0"});

  DisplayModel one(encoder_delta_sensor(), 0.0, 1, 0.0, 0);
  observed.clear();
  for (const char* payload : {"0", "1", "1", "0"})
    observed.push_back(one.spoof({"encoder", payload}, x, w));
  CHECK(observed == std::vector<std::string>{"0", "0", "1", "1"});
}

TEST_CASE("display failures are seed-deterministic and stay inside the set") {
  const WorldModel w(5, 5);
  const PhysicalState x{{2, 2}, Heading::East, false, 0};
  const SensorModel range = range_sensor(4);

  auto sample = [&](std::uint64_t seed) {
    DisplayModel d(range, 0.0, 0, 1.0, seed);
    std::vector<std::string> out;
    for (int i = 0; i < 30; ++i) out.push_back(d.spoof({range.id, "2"}, x, w));
    return out;
  };
  const auto a = sample(5), b = sample(5), c = sample(6);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& y : a) CHECK(range.knows_symbol(y));
}

TEST_CASE("all-real mixing is exactly core sensing") {
  const WorldModel w(5, 5, {{3, 3}});
  const auto sensors = make_sensors({"bump", "proximity:1", "range:4", "encoder"});
  auto vwg = VirtualWorldState::black_box(WorldModel(2, 2),
                                          PhysicalState{{0, 0}, Heading::North, false, 0});
  std::map<std::string, DisplayModel> displays;
  const MixConfig mix = uniform_mix(sensors, Route::Real);

  const StateEnumeration states(w);
  for (StateId s = 0; s < states.size(); ++s) {
    const PhysicalState x = states.state_of(s);
    const auto tuple = observe_mixed(mix, displays, sensors, vwg, x, w);
    for (size_t i = 0; i < sensors.size(); ++i)
      CHECK(tuple[i] == sensors[i].sense(x, w));
  }
}

TEST_CASE("all-virtual ideal displays reproduce virtual-room sensing exactly") {
  const WorldModel real(6, 2);
  const WorldModel virtual_room(4, 4, {{2, 1}});
  const auto sensors = make_sensors({"bump", "proximity:1", "range:4", "encoder"});
  const MixConfig mix = uniform_mix(sensors, Route::Virtual);

  const StateEnumeration virtual_states(virtual_room);
  const PhysicalState x{{1, 0}, Heading::West, false, 0};
  for (StateId vs = 0; vs < virtual_states.size(); ++vs) {
    auto vwg = VirtualWorldState::black_box(virtual_room, virtual_states.state_of(vs));
    std::map<std::string, DisplayModel> displays;
    const auto tuple = observe_mixed(mix, displays, sensors, vwg, x, real);
    for (size_t i = 0; i < sensors.size(); ++i)
      CHECK(tuple[i] == sensors[i].sense(virtual_states.state_of(vs), virtual_room));
  }
}

TEST_CASE("partial mixing spoofs the bump while the real range sees farther") {
  const WorldModel real(5, 5);
  const WorldModel virtual_room(5, 5, {{3, 2}});
  // the previous virtual Forward was blocked by the virtual obstacle
  auto vwg = VirtualWorldState::black_box(virtual_room,
                                          PhysicalState{{2, 2}, Heading::East, false, 0});
  step_vwg(vwg, {}, Action::Forward);
  REQUIRE(vwg.virtual_state.bumped);

  const auto sensors = make_sensors({"bump", "range:4"});
  MixConfig mix{{"bump", Route::Virtual}, {"range:4", Route::Real}};
  std::map<std::string, DisplayModel> displays;
  const PhysicalState x{{2, 2}, Heading::East, false, 0};
  const auto tuple = observe_mixed(mix, displays, sensors, vwg, x, real);
  CHECK(tuple[0] == "True");  // spoofed contact
  CHECK(tuple[1] == "3");     // the real wall is farther than the virtual obstacle

  MixConfig partial{{"bump", Route::Virtual}};
  CHECK_THROWS_AS(observe_mixed(partial, displays, sensors, vwg, x, real), ConfigError);
}

TEST_CASE("real and virtual trajectories may diverge and both keep evolving") {
  const WorldModel real(6, 1);
  const WorldModel virtual_room(3, 1);
  PhysicalState x{{0, 0}, Heading::East, false, 0};
  auto vwg = VirtualWorldState::black_box(virtual_room, x);

  for (int i = 0; i < 4; ++i) {
    step_vwg(vwg, x, Action::Forward);
    x = transition(x, Action::Forward, real);
  }
  CHECK(x.pos == Cell{4, 0});
  CHECK_FALSE(x.bumped);
  CHECK(vwg.virtual_state.pos == Cell{2, 0});
  CHECK(vwg.virtual_state.bumped);
}

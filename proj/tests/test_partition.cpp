#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "vrr/vrr.hpp"

using namespace vrr;

namespace {

bool is_partition_of(const Partition& p, StateId universe) {
  std::vector<bool> seen(universe, false);
  for (const auto& cell : p.cells) {
    if (cell.empty()) return false;
    for (StateId s : cell) {
      if (s >= universe || seen[s]) return false;
      seen[s] = true;
      if (p.cell_of[s] != static_cast<std::uint32_t>(&cell - p.cells.data())) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// every cell of `fine` is contained in one cell of `coarse`
bool refines(const Partition& fine, const Partition& coarse) {
  for (const auto& cell : fine.cells) {
    const auto target = coarse.cell_of[cell.front()];
    for (StateId s : cell)
      if (coarse.cell_of[s] != target) return false;
  }
  return true;
}

Partition manual_partition(StateId universe, std::vector<std::vector<StateId>> cells) {
  Partition p;
  p.cell_of.assign(universe, 0);
  for (std::uint32_t c = 0; c < cells.size(); ++c)
    for (StateId s : cells[c]) p.cell_of[s] = c;
  p.cells = std::move(cells);
  return p;
}

}  // namespace

TEST_CASE("preimage of a constant sensor is the whole state space") {
  const WorldModel w(4, 3);
  const StateEnumeration states(w);
  CHECK(preimage(constant_sensor(), "0", w).size() == states.size());
}

TEST_CASE("preimage of proximity True on empty 5x5 is the boundary ring") {
  const WorldModel w(5, 5);
  const auto pre = preimage(proximity_sensor(1), "True", w);
  // 16 ring positions x 4 headings x 2 bump flags
  CHECK(pre.size() == 128);
  const StateEnumeration states(w);
  for (StateId s : pre) {
    const Cell pos = states.state_of(s).pos;
    const bool on_ring = pos.col == 0 || pos.col == 4 || pos.row == 0 || pos.row == 4;
    CHECK(on_ring);
  }
}

TEST_CASE("preimage of bump True is exactly the bumped half of the space") {
  const WorldModel w(5, 5);
  const StateEnumeration states(w);
  const auto pre = preimage(bump_sensor(), "True", w);
  CHECK(pre.size() == states.size() / 2);
  for (StateId s : pre) CHECK(states.state_of(s).bumped);
}

TEST_CASE("preimage rejects symbols outside the observation set") {
  const WorldModel w(5, 5);
  CHECK_THROWS_AS(preimage(bump_sensor(), "Maybe", w), DomainError);
}

TEST_CASE("sensor partitions: constant collapses, bump splits by flag") {
  const WorldModel w(5, 5);
  CHECK(sensor_partition(constant_sensor(), w).cells.size() == 1);

  const Partition bump = sensor_partition(bump_sensor(), w);
  REQUIRE(bump.cells.size() == 2);
  const StateEnumeration states(w);
  CHECK(is_partition_of(bump, states.size()));
}

TEST_CASE("range partition on empty 5x5 has one cell per attained distance") {
  const WorldModel w(5, 5);
  const Partition p = sensor_partition(range_sensor(4), w);
  // attained readings are 1,2,3,4,Inf; 0 needs a blocked start cell
  CHECK(p.cells.size() == 5);
  CHECK(is_partition_of(p, StateEnumeration(w).size()));
}

TEST_CASE("common refinement against a single-cell partition is the identity") {
  const WorldModel w(4, 4, {{2, 2}});
  const Partition p = sensor_partition(range_sensor(3), w);
  const Partition one = sensor_partition(constant_sensor(), w);
  CHECK(common_refinement({one, p}).cells == p.cells);
}

TEST_CASE("common refinement of hand-built partitions over 0..9") {
  const Partition a = manual_partition(10, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  const Partition b = manual_partition(10, {{0, 1}, {2, 3, 4, 5, 6, 7, 8, 9}});
  const Partition r = common_refinement({a, b});
  const std::vector<std::vector<StateId>> expected{{0, 1}, {2, 3, 4}, {5, 6, 7, 8, 9}};
  CHECK(r.cells == expected);
}

TEST_CASE("bump and proximity refine to the four attained combinations on empty 5x5") {
  const WorldModel w(5, 5);
  const Partition r = common_refinement(
      {sensor_partition(bump_sensor(), w), sensor_partition(proximity_sensor(1), w)});
  CHECK(r.cells.size() == 4);
}

TEST_CASE("common refinement rejects mismatched universes") {
  const Partition a = manual_partition(4, {{0, 1}, {2, 3}});
  const Partition b = manual_partition(5, {{0, 1, 2, 3, 4}});
  CHECK_THROWS_AS(common_refinement({a, b}), DomainError);
  CHECK_THROWS_AS(common_refinement({}), DomainError);
}

TEST_CASE("virtual space of a single constant sensor is one self-looping cell") {
  const WorldModel w(4, 4);
  const VirtualSpace vs = build_virtual_space({constant_sensor()}, w);
  REQUIRE(vs.cell_count() == 1);
  for (Action a : kAllActions) {
    const size_t ai = static_cast<size_t>(a);
    CHECK(vs.induced_transitions[0][ai] == std::vector<std::uint32_t>{0});
    CHECK(vs.deterministic_flags[0][ai]);
  }
  CHECK(vs.nondeterministic_pair_count() == 0);
}

TEST_CASE("bump-only virtual space on empty 3x3 lifts Forward nondeterministically") {
  const WorldModel w(3, 3);
  const VirtualSpace vs = build_virtual_space({bump_sensor()}, w);
  REQUIRE(vs.cell_count() == 2);

  // cell 0 holds state 0 (not bumped): some members bump, some advance
  CHECK(vs.cell_observations[0] == std::vector<std::string>{"False"});
  const size_t fwd = static_cast<size_t>(Action::Forward);
  CHECK_FALSE(vs.deterministic_flags[0][fwd]);
  CHECK(vs.induced_transitions[0][fwd] == std::vector<std::uint32_t>{0, 1});
  // turning always clears the flag
  CHECK(vs.deterministic_flags[1][static_cast<size_t>(Action::TurnLeft)]);
  CHECK(vs.induced_transitions[1][static_cast<size_t>(Action::TurnLeft)] ==
        std::vector<std::uint32_t>{0});
}

TEST_CASE("full-catalog virtual space on empty 5x5 matches direct grouping") {
  const WorldModel w(5, 5);
  const auto sensors = make_sensors({"bump", "proximity:1", "range:4", "encoder"});
  const VirtualSpace vs = build_virtual_space(sensors, w);

  // attained (proximity, range) pairs: interior cells see 2..4, ring cells
  // see 1..4 or Inf; times two for the bump flag (encoder mirrors bump)
  CHECK(vs.cell_count() == 16);

  const StateEnumeration states(w);
  const auto expected = test_helpers::group_by_observations(sensors, states);
  CHECK(vs.partition.cells == expected);

  // the guarantee: every member of a cell produces the cell's tuple
  for (size_t c = 0; c < vs.cell_count(); ++c)
    for (StateId s : vs.partition.cells[c])
      for (size_t i = 0; i < sensors.size(); ++i)
        CHECK(sensors[i].sense(states.state_of(s), w) == vs.cell_observations[c][i]);
}

TEST_CASE("build_virtual_space requires at least one sensor") {
  CHECK_THROWS_AS(build_virtual_space({}, WorldModel(3, 3)), DomainError);
}

TEST_CASE("partition laws hold on random worlds and sensor subsets") {
  std::mt19937 rng(4242);
  const std::vector<std::string> catalog{"bump", "proximity:1", "proximity:2",
                                         "range:2", "range:4", "encoder"};
  for (int trial = 0; trial < 20; ++trial) {
    const WorldModel world = test_helpers::random_world(rng);
    const StateEnumeration states(world);

    std::vector<SensorModel> sensors;
    std::vector<Partition> parts;
    std::uniform_int_distribution<size_t> pick(0, catalog.size() - 1);
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) sensors.push_back(make_sensor(catalog[pick(rng)]));
    for (const auto& s : sensors) parts.push_back(sensor_partition(s, states));

    for (const auto& p : parts) CHECK(is_partition_of(p, states.size()));

    const Partition refined = common_refinement(parts);
    CHECK(is_partition_of(refined, states.size()));
    for (const auto& p : parts) CHECK(refines(refined, p));

    // idempotence and commutativity under cell-set equality
    CHECK(common_refinement({refined, refined}).cells == refined.cells);
    if (parts.size() >= 2) {
      auto reversed = parts;
      std::reverse(reversed.begin(), reversed.end());
      CHECK(common_refinement(reversed).cells == refined.cells);
    }

    // agreement guarantee plus brute-force grouping equality
    const VirtualSpace vs = build_virtual_space(sensors, world);
    CHECK(vs.partition.cells == test_helpers::group_by_observations(sensors, states));

    // deterministic flags against a recomputed successor relation
    for (size_t c = 0; c < vs.cell_count(); ++c)
      for (Action a : kAllActions) {
        std::set<std::uint32_t> succ;
        for (StateId s : vs.partition.cells[c])
          succ.insert(vs.partition.cell_of[states.id_of(transition(states.state_of(s), a, world))]);
        const size_t ai = static_cast<size_t>(a);
        CHECK(vs.deterministic_flags[c][ai] == (succ.size() == 1));
        CHECK(std::vector<std::uint32_t>(succ.begin(), succ.end()) ==
              vs.induced_transitions[c][ai]);
      }
  }
}

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vrr/errors.hpp"
#include "vrr/sensor.hpp"
#include "vrr/state_space.hpp"
#include "vrr/world.hpp"

namespace vrr {

// A partition of the enumerated state space into disjoint, non-empty cells.
// Cells are sorted internally and ordered by their smallest member, so equal
// partitions have identical representations.
struct Partition {
  std::vector<std::vector<StateId>> cells;
  std::vector<std::uint32_t> cell_of;  // indexed by StateId

  StateId universe_size() const { return static_cast<StateId>(cell_of.size()); }
};

namespace detail {

// Builds the canonical Partition from a key per state: states share a cell
// iff they share a key.
template <typename Key>
Partition partition_by_key(const std::vector<Key>& keys) {
  std::map<Key, std::vector<StateId>> groups;
  for (StateId s = 0; s < keys.size(); ++s) groups[keys[s]].push_back(s);

  std::vector<std::vector<StateId>> cells;
  cells.reserve(groups.size());
  for (auto& [key, members] : groups) cells.push_back(std::move(members));
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  Partition p;
  p.cell_of.assign(keys.size(), 0);
  for (std::uint32_t c = 0; c < cells.size(); ++c)
    for (StateId s : cells[c]) p.cell_of[s] = c;
  p.cells = std::move(cells);
  return p;
}

}  // namespace detail

// All states producing observation y: {x | h(x) = y}. May be empty.
inline std::vector<StateId> preimage(const SensorModel& sensor, const std::string& y,
                                     const StateEnumeration& states) {
  if (!sensor.knows_symbol(y))
    throw DomainError("symbol '" + y + "' not in observation set of " + sensor.id);
  std::vector<StateId> out;
  for (StateId s = 0; s < states.size(); ++s)
    if (sensor.sense(states.state_of(s), states.world()) == y) out.push_back(s);
  return out;
}

inline std::vector<StateId> preimage(const SensorModel& sensor, const std::string& y,
                                     const WorldModel& w) {
  return preimage(sensor, y, StateEnumeration(w));
}

// The non-empty preimages of a sensor form a partition of the state space.
inline Partition sensor_partition(const SensorModel& sensor, const StateEnumeration& states) {
  std::vector<std::string> keys(states.size());
  for (StateId s = 0; s < states.size(); ++s)
    keys[s] = sensor.sense(states.state_of(s), states.world());
  return detail::partition_by_key(keys);
}

inline Partition sensor_partition(const SensorModel& sensor, const WorldModel& w) {
  return sensor_partition(sensor, StateEnumeration(w));
}

// Coarsest partition finer than every input: states share a cell iff they
// share a cell in every input partition.
inline Partition common_refinement(const std::vector<Partition>& parts) {
  if (parts.empty()) throw DomainError("common_refinement of zero partitions");
  const StateId n = parts.front().universe_size();
  for (const Partition& p : parts)
    if (p.universe_size() != n)
      throw DomainError("common_refinement over mismatched universes");

  std::vector<std::vector<std::uint32_t>> keys(n);
  for (StateId s = 0; s < n; ++s) {
    keys[s].reserve(parts.size());
    for (const Partition& p : parts) keys[s].push_back(p.cell_of[s]);
  }
  return detail::partition_by_key(keys);
}

// The virtual state space built from a sensor suite: the common refinement of
// all sensor partitions, the observation tuple shared by each cell, and the
// transition relation lifted to cells.
struct VirtualSpace {
  std::vector<std::string> sensor_ids;
  StateId num_states = 0;
  Partition partition;
  // one observation per sensor, per cell
  std::vector<std::vector<std::string>> cell_observations;
  // [cell][action] -> sorted successor cell ids
  std::vector<std::array<std::vector<std::uint32_t>, 4>> induced_transitions;
  std::vector<std::array<bool, 4>> deterministic_flags;

  size_t cell_count() const { return partition.cells.size(); }

  size_t nondeterministic_pair_count() const {
    size_t n = 0;
    for (const auto& flags : deterministic_flags)
      for (bool d : flags)
        if (!d) ++n;
    return n;
  }
};

// Every state in a cell of the result is guaranteed to produce the same
// reading on every sensor. Successor cell sets are computed by pushing every
// member state through the transition function; a (cell, action) pair is
// deterministic iff its successor set is a singleton.
inline VirtualSpace build_virtual_space(const std::vector<SensorModel>& sensors,
                                        const WorldModel& w) {
  if (sensors.empty()) throw DomainError("build_virtual_space needs at least one sensor");
  const StateEnumeration states(w);

  VirtualSpace vs;
  vs.num_states = states.size();
  for (const auto& s : sensors) vs.sensor_ids.push_back(s.id);

  std::vector<Partition> parts;
  parts.reserve(sensors.size());
  for (const auto& s : sensors) parts.push_back(sensor_partition(s, states));
  vs.partition = common_refinement(parts);

  const size_t ncells = vs.partition.cells.size();
  vs.cell_observations.resize(ncells);
  for (size_t c = 0; c < ncells; ++c) {
    const PhysicalState representative = states.state_of(vs.partition.cells[c].front());
    for (const auto& s : sensors)
      vs.cell_observations[c].push_back(s.sense(representative, w));
  }

  vs.induced_transitions.resize(ncells);
  vs.deterministic_flags.resize(ncells);
  for (size_t c = 0; c < ncells; ++c) {
    for (Action a : kAllActions) {
      const size_t ai = static_cast<size_t>(a);
      std::vector<std::uint32_t> succ;
      for (StateId s : vs.partition.cells[c]) {
        const PhysicalState next = transition(states.state_of(s), a, w);
        succ.push_back(vs.partition.cell_of[states.id_of(next)]);
      }
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      vs.deterministic_flags[c][ai] = succ.size() == 1;
      vs.induced_transitions[c][ai] = std::move(succ);
    }
  }
  return vs;
}

}  // namespace vrr

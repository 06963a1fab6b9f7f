#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here recomputes expectations from first principles (direct grouping,
// Floyd-Warshall, hand-rolled enumeration) so the library is checked against
// a second route, not against itself.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vrr/vrr.hpp"

namespace test_helpers {

// Cyclic-shift automaton with one almost-identity letter: states 0..n-1,
// 'a' maps i to i+1 mod n, 'b' maps 0 to 1 and fixes everything else. Its
// shortest reset word has length (n-1)^2.
inline vrr::InformationAutomaton cerny(int n) {
  vrr::InformationAutomaton a;
  for (int i = 0; i < n; ++i) a.istates.push_back(std::to_string(i));
  a.alphabet = {"a", "b"};
  a.delta.assign(n, std::vector<int>(2, 0));
  for (int i = 0; i < n; ++i) {
    a.delta[i][0] = (i + 1) % n;
    a.delta[i][1] = (i == 0) ? 1 : i;
  }
  a.outputs.assign(n, vrr::Action::Stop);
  return a;
}

// All letters permute the states, so no two states can ever be merged.
inline vrr::InformationAutomaton permutation_automaton(int n) {
  vrr::InformationAutomaton a;
  for (int i = 0; i < n; ++i) a.istates.push_back(std::to_string(i));
  a.alphabet = {"a", "b"};
  a.delta.assign(n, std::vector<int>(2, 0));
  for (int i = 0; i < n; ++i) {
    a.delta[i][0] = (i + 1) % n;                      // cycle
    a.delta[i][1] = i < 2 ? 1 - i : i;                // swap first two
  }
  a.outputs.assign(n, vrr::Action::Stop);
  return a;
}

inline vrr::InformationAutomaton random_dfa(std::mt19937& rng, int max_n = 10,
                                            int max_k = 4) {
  std::uniform_int_distribution<int> n_dist(1, max_n), k_dist(1, max_k);
  const int n = n_dist(rng), k = k_dist(rng);
  vrr::InformationAutomaton a;
  for (int i = 0; i < n; ++i) a.istates.push_back("q" + std::to_string(i));
  for (int s = 0; s < k; ++s) a.alphabet.push_back(std::string(1, char('a' + s)));
  std::uniform_int_distribution<int> state_dist(0, n - 1);
  a.delta.assign(n, std::vector<int>(k, 0));
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < k; ++s) a.delta[i][s] = state_dist(rng);
  a.outputs.assign(n, vrr::Action::Stop);
  return a;
}

// Validates a proposed synchronizing word by running it from every state.
inline bool synchronizes(const vrr::InformationAutomaton& a,
                         const vrr::ObservationWord& word) {
  std::set<int> ends;
  for (int s = 0; s < static_cast<int>(a.istates.size()); ++s)
    ends.insert(vrr::run(a, s, word));
  return ends.size() == 1;
}

// All-pairs shortest word lengths over the one-step reachability graph,
// by Floyd-Warshall. -1 means unreachable. Independent of the BFS route.
inline std::vector<std::vector<int>> fw_distances(const vrr::InformationAutomaton& a) {
  const int n = static_cast<int>(a.istates.size());
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i < n; ++i)
    for (size_t s = 0; s < a.alphabet.size(); ++s)
      d[i][a.delta[i][s]] = std::min(d[i][a.delta[i][s]], 1);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] >= inf) d[i][j] = -1;
  return d;
}

inline vrr::WorldModel random_world(std::mt19937& rng, int max_side = 8,
                                    double obstacle_prob = 0.18) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (true) {
    const int w = side(rng), h = side(rng);
    std::set<vrr::Cell> obstacles;
    for (int row = 0; row < h; ++row)
      for (int col = 0; col < w; ++col)
        if (coin(rng) < obstacle_prob) obstacles.insert({col, row});
    if (static_cast<int>(obstacles.size()) == w * h) continue;  // keep a free cell
    return vrr::WorldModel(w, h, std::move(obstacles), "random");
  }
}

// Direct grouping of states by full observation tuple; the ground truth the
// common refinement must reproduce.
inline std::vector<std::vector<vrr::StateId>> group_by_observations(
    const std::vector<vrr::SensorModel>& sensors, const vrr::StateEnumeration& states) {
  std::map<std::vector<std::string>, std::vector<vrr::StateId>> groups;
  for (vrr::StateId s = 0; s < states.size(); ++s) {
    std::vector<std::string> key;
    for (const auto& sensor : sensors)
      key.push_back(sensor.sense(states.state_of(s), states.world()));
    groups[key].push_back(s);
  }
  std::vector<std::vector<vrr::StateId>> cells;
  for (auto& [key, members] : groups) cells.push_back(std::move(members));
  std::sort(cells.begin(), cells.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return cells;
}

}  // namespace test_helpers

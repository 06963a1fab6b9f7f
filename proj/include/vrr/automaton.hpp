#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vrr/errors.hpp"
#include "vrr/world.hpp"

namespace vrr {

// A finite sequence of observation symbols fed to the robot.
using ObservationWord = std::vector<std::string>;

// The robot's decision core as a deterministic finite automaton: states are
// information states, input symbols are (joint) sensor observations, and each
// I-state emits one action. The order of `istates` and `alphabet` fixes all
// tie-breaking, so identical automata always yield identical solver outputs.
struct InformationAutomaton {
  std::vector<std::string> istates;
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> delta;  // [istate][symbol] -> istate
  std::vector<Action> outputs;          // [istate] -> action

  int istate_index(const std::string& name) const {
    for (size_t i = 0; i < istates.size(); ++i)
      if (istates[i] == name) return static_cast<int>(i);
    throw DomainError("unknown I-state: " + name);
  }

  int symbol_index(const std::string& symbol) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == symbol) return static_cast<int>(i);
    throw DomainError("unknown observation symbol: " + symbol);
  }

  int step(int istate, const std::string& symbol) const {
    return delta[istate][symbol_index(symbol)];
  }
};

// Folds the word through delta from `start`.
inline int run(const InformationAutomaton& a, int start, const ObservationWord& word) {
  if (start < 0 || start >= static_cast<int>(a.istates.size()))
    throw DomainError("start I-state out of range");
  int cur = start;
  for (const auto& y : word) cur = a.step(cur, y);
  return cur;
}

namespace detail {

// Shortest merging words for every unordered state pair, computed by a
// backward BFS on the pair automaton from the singleton pairs. dist == -1
// means the pair can never be merged. The first symbol of a canonical
// shortest merging word from {p,q} is the alphabet-least symbol whose
// successor pair is one step closer; this makes walks reproducible without
// depending on BFS visitation order.
struct PairMergeTable {
  int n = 0;
  std::vector<int> dist;  // index p*n+q with p <= q

  int id(int p, int q) const {
    if (p > q) std::swap(p, q);
    return p * n + q;
  }
};

inline PairMergeTable pair_merge_table(const InformationAutomaton& a) {
  PairMergeTable t;
  t.n = static_cast<int>(a.istates.size());
  const int n = t.n;
  const int k = static_cast<int>(a.alphabet.size());
  t.dist.assign(static_cast<size_t>(n) * n, -1);

  std::vector<std::vector<int>> rev(static_cast<size_t>(n) * n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      for (int s = 0; s < k; ++s) {
        const int target = t.id(a.delta[p][s], a.delta[q][s]);
        if (target != t.id(p, q)) rev[target].push_back(t.id(p, q));
      }

  std::deque<int> queue;
  for (int p = 0; p < n; ++p) {
    t.dist[t.id(p, p)] = 0;
    queue.push_back(t.id(p, p));
  }
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int pred : rev[cur]) {
      if (t.dist[pred] == -1) {
        t.dist[pred] = t.dist[cur] + 1;
        queue.push_back(pred);
      }
    }
  }
  return t;
}

inline int merge_step_symbol(const InformationAutomaton& a, const PairMergeTable& t,
                             int p, int q) {
  const int d = t.dist[t.id(p, q)];
  for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s)
    if (t.dist[t.id(a.delta[p][s], a.delta[q][s])] == d - 1) return s;
  throw DomainError("inconsistent pair merge table");
}

}  // namespace detail

// True iff some word sends every I-state to one common I-state; equivalent to
// every state pair being mergeable in the pair automaton.
inline bool is_synchronizable(const InformationAutomaton& a) {
  const int n = static_cast<int>(a.istates.size());
  if (n <= 1) return true;
  if (a.alphabet.empty()) return false;
  const auto t = detail::pair_merge_table(a);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (t.dist[t.id(p, q)] == -1) return false;
  return true;
}

// Greedy synchronizing-word construction: precompute shortest pair-merging
// words, then repeatedly merge the still-active pair with the shortest word
// (ties broken by smallest istate index pair) until a single state remains.
// The produced word never exceeds (n^3 - n) / 6 symbols.
inline ObservationWord greedy_sync_word(const InformationAutomaton& a) {
  const int n = static_cast<int>(a.istates.size());
  if (n <= 1) return {};
  if (a.alphabet.empty()) throw NotSynchronizable("empty alphabet");

  const auto t = detail::pair_merge_table(a);
  std::vector<int> current(n);
  for (int i = 0; i < n; ++i) current[i] = i;

  ObservationWord word;
  while (current.size() > 1) {
    int best_p = -1, best_q = -1, best_d = -1;
    for (size_t i = 0; i < current.size(); ++i) {
      for (size_t j = i + 1; j < current.size(); ++j) {
        const int d = t.dist[t.id(current[i], current[j])];
        if (d == -1) continue;
        if (best_d == -1 || d < best_d) {
          best_d = d;
          best_p = current[i];
          best_q = current[j];
        }
      }
    }
    if (best_d == -1)
      throw NotSynchronizable("no merging word for remaining I-state set");

    int p = best_p, q = best_q;
    while (p != q) {
      const int s = detail::merge_step_symbol(a, t, p, q);
      word.push_back(a.alphabet[s]);
      for (int& m : current) m = a.delta[m][s];
      p = a.delta[p][s];
      q = a.delta[q][s];
    }
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
  }
  return word;
}

// Exhaustive shortest synchronizing word via BFS over the subset lattice.
// Exponential in the state count; refuses instances with more than 12
// I-states. Test and cross-check use only.
inline ObservationWord shortest_sync_word_oracle(const InformationAutomaton& a) {
  const int n = static_cast<int>(a.istates.size());
  if (n > 12) throw SizeLimit("subset-BFS oracle limited to 12 I-states");
  if (n <= 1) return {};
  if (a.alphabet.empty()) throw NotSynchronizable("empty alphabet");
  const int k = static_cast<int>(a.alphabet.size());

  const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1u);
  std::vector<std::int32_t> prev_mask(1u << n, -1);
  std::vector<std::int8_t> prev_sym(1u << n, -1);
  std::deque<std::uint32_t> queue;
  prev_mask[full] = static_cast<std::int32_t>(full);
  queue.push_back(full);

  std::uint32_t goal = 0;
  bool found = false;
  while (!queue.empty() && !found) {
    const std::uint32_t mask = queue.front();
    queue.pop_front();
    for (int s = 0; s < k && !found; ++s) {
      std::uint32_t next = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) next |= 1u << a.delta[i][s];
      if (prev_mask[next] != -1) continue;
      prev_mask[next] = static_cast<std::int32_t>(mask);
      prev_sym[next] = static_cast<std::int8_t>(s);
      if ((next & (next - 1)) == 0) {
        goal = next;
        found = true;
      } else {
        queue.push_back(next);
      }
    }
  }
  if (!found) throw NotSynchronizable("subset BFS never reached a singleton");

  ObservationWord word;
  for (std::uint32_t m = goal; m != full; m = static_cast<std::uint32_t>(prev_mask[m]))
    word.push_back(a.alphabet[prev_sym[m]]);
  std::reverse(word.begin(), word.end());
  return word;
}

// Marker for an unknown start I-state.
struct UnknownStart {};

namespace detail {

// Shortest word from `start` to `target`, expanding symbols in alphabet
// order (BFS yields the lexicographically-least shortest word).
inline std::optional<ObservationWord> bfs_word(const InformationAutomaton& a, int start,
                                               int target) {
  const int n = static_cast<int>(a.istates.size());
  if (start == target) return ObservationWord{};
  std::vector<int> prev_state(n, -1), prev_sym(n, -1);
  std::deque<int> queue;
  prev_state[start] = start;
  queue.push_back(start);
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int s = 0; s < static_cast<int>(a.alphabet.size()); ++s) {
      const int next = a.delta[cur][s];
      if (prev_state[next] != -1) continue;
      prev_state[next] = cur;
      prev_sym[next] = s;
      if (next == target) {
        ObservationWord word;
        for (int m = target; m != start; m = prev_state[m])
          word.push_back(a.alphabet[prev_sym[m]]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Observation sequence driving the automaton to `target` from a known start
// (shortest such word), or throws NoSequence when none exists.
inline ObservationWord drive_to(const InformationAutomaton& a, int target, int start) {
  if (target < 0 || target >= static_cast<int>(a.istates.size()))
    throw DomainError("target I-state out of range");
  if (start < 0 || start >= static_cast<int>(a.istates.size()))
    throw DomainError("start I-state out of range");
  auto word = detail::bfs_word(a, start, target);
  if (!word) throw NoSequence("target '" + a.istates[target] + "' unreachable from '" +
                              a.istates[start] + "'");
  return *word;
}

// Unknown start: synchronize first (all starts collapse to one state s0),
// then search a tail from s0 to the target. Failure of the tail search proves
// nonexistence: the end state of any synchronizing word is reachable from s0,
// so any all-starts word for the target would make it reachable from s0 too.
inline ObservationWord drive_to(const InformationAutomaton& a, int target, UnknownStart) {
  if (target < 0 || target >= static_cast<int>(a.istates.size()))
    throw DomainError("target I-state out of range");
  ObservationWord word = greedy_sync_word(a);
  const int s0 = run(a, 0, word);
  auto tail = detail::bfs_word(a, s0, target);
  if (!tail) throw NoSequence("target '" + a.istates[target] +
                              "' unreachable from the synchronized state");
  word.insert(word.end(), tail->begin(), tail->end());
  return word;
}

// The built-in white-box example: a four-mode vacuum robot driven by the
// joint (bump, proximity) observation. The quiet symbol "False,False" resets
// every mode to SweepFwd, so the machine has a one-symbol synchronizing word;
// Done is only entered through spoofed input because TurnAround's own output
// clears the bump flag.
inline InformationAutomaton vacuum_brain() {
  InformationAutomaton a;
  a.istates = {"SweepFwd", "WallFollowL", "TurnAround", "Done"};
  a.alphabet = {"False,False", "False,True", "True,False", "True,True"};
  const int S = 0, W = 1, T = 2, D = 3;
  a.delta = {
      /* SweepFwd    */ {S, W, T, T},
      /* WallFollowL */ {S, S, T, T},
      /* TurnAround  */ {S, S, T, D},
      /* Done        */ {S, D, S, D},
  };
  a.outputs = {Action::Forward, Action::TurnLeft, Action::TurnRight, Action::Stop};
  return a;
}

}  // namespace vrr

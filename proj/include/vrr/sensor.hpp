#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "vrr/errors.hpp"
#include "vrr/world.hpp"

namespace vrr {

// A named sensor with a finite observation set and a total, deterministic
// mapping from (state, world) to one of its symbols.
struct SensorModel {
  std::string id;
  std::vector<std::string> observation_set;
  std::function<std::string(const PhysicalState&, const WorldModel&)> mapping;

  std::string sense(const PhysicalState& x, const WorldModel& w) const {
    require_valid_state(x, w);
    return mapping(x, w);
  }

  bool knows_symbol(const std::string& y) const {
    return std::find(observation_set.begin(), observation_set.end(), y) !=
           observation_set.end();
  }
};

inline std::string sense(const SensorModel& sensor, const PhysicalState& x,
                         const WorldModel& w) {
  return sensor.sense(x, w);
}

// Chebyshev distance from `pos` to the nearest blocked cell (obstacle or
// out-of-bounds). "Within t cells of a wall" uses the square ball of radius t.
inline int wall_distance(const Cell& pos, const WorldModel& w) {
  int d = std::min(std::min(pos.col + 1, w.width() - pos.col),
                   std::min(pos.row + 1, w.height() - pos.row));
  for (const Cell& o : w.obstacles()) {
    const int cheb = std::max(std::abs(o.col - pos.col), std::abs(o.row - pos.row));
    d = std::min(d, cheb);
  }
  return d;
}

// Distance in cells to the first blocked cell along the heading: 1 means the
// adjacent cell is blocked. Returns 0 when no block lies within `max_range`
// cells (mapped to the "Inf" symbol by the range sensor).
inline int ray_cast(const PhysicalState& x, const WorldModel& w, int max_range) {
  const Cell d = heading_delta(x.heading);
  for (int k = 1; k <= max_range; ++k) {
    const Cell c{x.pos.col + k * d.col, x.pos.row + k * d.row};
    if (w.blocked(c)) return k;
  }
  return 0;
}

// --- built-in catalog ---

inline SensorModel bump_sensor() {
  return {"bump",
          {"False", "True"},
          [](const PhysicalState& x, const WorldModel&) {
            return x.bumped ? std::string("True") : std::string("False");
          }};
}

inline SensorModel proximity_sensor(int threshold) {
  return {"proximity:" + std::to_string(threshold),
          {"False", "True"},
          [threshold](const PhysicalState& x, const WorldModel& w) {
            return wall_distance(x.pos, w) <= threshold ? std::string("True")
                                                        : std::string("False");
          }};
}

inline SensorModel range_sensor(int max_range) {
  std::vector<std::string> symbols;
  for (int k = 0; k <= max_range; ++k) symbols.push_back(std::to_string(k));
  symbols.push_back("Inf");
  return {"range:" + std::to_string(max_range), std::move(symbols),
          [max_range](const PhysicalState& x, const WorldModel& w) {
            const int k = ray_cast(x, w, max_range);
            return k == 0 ? std::string("Inf") : std::to_string(k);
          }};
}

// Reads 1 unless the immediately preceding Forward was blocked.
inline SensorModel encoder_delta_sensor() {
  return {"encoder",
          {"0", "1"},
          [](const PhysicalState& x, const WorldModel&) {
            return x.bumped ? std::string("0") : std::string("1");
          }};
}

inline SensorModel constant_sensor(const std::string& symbol = "0") {
  return {"constant:" + symbol,
          {symbol},
          [symbol](const PhysicalState&, const WorldModel&) { return symbol; }};
}

// Parses a sensor id of the form "bump", "proximity:<t>", "range:<m>",
// "encoder" or "constant[:<sym>]".
inline SensorModel make_sensor(const std::string& id) {
  const auto colon = id.find(':');
  const std::string kind = colon == std::string::npos ? id : id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (kind == "bump" && arg.empty()) return bump_sensor();
  if (kind == "encoder" && arg.empty()) return encoder_delta_sensor();
  if (kind == "proximity" && !arg.empty()) return proximity_sensor(std::stoi(arg));
  if (kind == "range" && !arg.empty()) return range_sensor(std::stoi(arg));
  if (kind == "constant") return constant_sensor(arg.empty() ? "0" : arg);
  throw DomainError("unknown sensor: " + id);
}

inline std::vector<SensorModel> make_sensors(const std::vector<std::string>& ids) {
  std::vector<SensorModel> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(make_sensor(id));
  return out;
}

// Joint observation symbol: per-sensor symbols joined with ',' in list order.
inline std::string join_symbols(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

inline std::vector<std::string> split_symbol(const std::string& joint) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : joint) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// All joint symbols of a sensor list, enumerated with the leftmost sensor as
// the most significant position. This order defines the canonical product
// alphabet.
inline std::vector<std::string> product_alphabet(const std::vector<SensorModel>& sensors) {
  std::vector<std::string> alphabet{""};
  for (size_t i = 0; i < sensors.size(); ++i) {
    std::vector<std::string> next;
    next.reserve(alphabet.size() * sensors[i].observation_set.size());
    for (const auto& prefix : alphabet)
      for (const auto& y : sensors[i].observation_set)
        next.push_back(i == 0 ? y : prefix + "," + y);
    alphabet = std::move(next);
  }
  return alphabet;
}

}  // namespace vrr

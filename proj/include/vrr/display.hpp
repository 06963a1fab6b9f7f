#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <string>

#include "vrr/errors.hpp"
#include "vrr/sensor.hpp"
#include "vrr/world.hpp"

namespace vrr {

// What a renderer hands to a display: a payload symbol addressed to one
// sensor. For catalog sensors the display output space equals the sensor's
// observation set.
struct DisplayOutput {
  std::string sensor_id;
  std::string payload;
};

// Per-sensor routing: read the physical world or the display.
enum class Route : std::uint8_t { Real, Virtual };

using MixConfig = std::map<std::string, Route>;

inline bool all_virtual(const MixConfig& mix) {
  for (const auto& [id, route] : mix)
    if (route != Route::Virtual) return false;
  return true;
}

// FNV-1a; used to derive stable per-sensor RNG streams from the scenario seed.
inline std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// The device that turns a display output into the observation the targeted
// sensor actually produces. An ideal display (leak 0, latency 0, failure 0)
// presents the payload verbatim. Imperfections apply in order:
//   latency   : present the payload rendered `latency_steps` ago (zero-order
//               hold, pre-filled with the first rendering);
//   failure   : with probability failure_prob emit a uniformly random symbol
//               of the sensor's observation set;
//   ambient   : with probability ambient_leak the real reading h(x) wins.
// `blocks_motion` marks contact-style displays that physically obstruct the
// robot while firing, so a spoofed bump also blocks the real Forward.
class DisplayModel {
 public:
  DisplayModel() = default;
  DisplayModel(SensorModel sensor, double ambient_leak, int latency_steps,
               double failure_prob, std::uint64_t seed, bool blocks_motion = false)
      : sensor_(std::move(sensor)),
        ambient_leak_(ambient_leak),
        latency_steps_(latency_steps),
        failure_prob_(failure_prob),
        blocks_motion_(blocks_motion),
        rng_(seed) {
    if (ambient_leak_ < 0.0 || ambient_leak_ > 1.0)
      throw ConfigError("ambient_leak outside [0,1]");
    if (failure_prob_ < 0.0 || failure_prob_ > 1.0)
      throw ConfigError("failure_prob outside [0,1]");
    if (latency_steps_ < 0) throw ConfigError("latency_steps negative");
  }

  static DisplayModel ideal(SensorModel sensor, bool blocks_motion = false) {
    return DisplayModel(std::move(sensor), 0.0, 0, 0.0, 0, blocks_motion);
  }

  const std::string& sensor_id() const { return sensor_.id; }
  bool blocks_motion() const { return blocks_motion_; }
  bool is_ideal() const {
    return ambient_leak_ == 0.0 && latency_steps_ == 0 && failure_prob_ == 0.0;
  }

  std::string spoof(const DisplayOutput& d, const PhysicalState& x, const WorldModel& w) {
    if (!sensor_.knows_symbol(d.payload))
      throw DomainError("payload '" + d.payload + "' outside display space of " +
                        sensor_.id);
    hold_.push_back(d.payload);
    while (hold_.size() > static_cast<size_t>(latency_steps_) + 1) hold_.pop_front();
    std::string y = hold_.front();

    if (failure_prob_ > 0.0) {
      if (uniform_(rng_) < failure_prob_) {
        std::uniform_int_distribution<size_t> pick(0, sensor_.observation_set.size() - 1);
        y = sensor_.observation_set[pick(rng_)];
      }
    }
    if (ambient_leak_ > 0.0) {
      if (uniform_(rng_) < ambient_leak_) y = sensor_.sense(x, w);
    }
    return y;
  }

 private:
  SensorModel sensor_;
  double ambient_leak_ = 0.0;
  int latency_steps_ = 0;
  double failure_prob_ = 0.0;
  bool blocks_motion_ = false;
  std::mt19937_64 rng_{0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::deque<std::string> hold_;
};

}  // namespace vrr

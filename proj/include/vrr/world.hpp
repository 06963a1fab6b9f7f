#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "vrr/errors.hpp"

namespace vrr {

// Grid coordinates are (col, row), 0-based, col increasing east and row
// increasing north.
struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Heading : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline const char* to_string(Heading h) {
  switch (h) {
    case Heading::North: return "N";
    case Heading::East: return "E";
    case Heading::South: return "S";
    case Heading::West: return "W";
  }
  return "?";
}

inline Heading heading_from_string(const std::string& s) {
  if (s == "N") return Heading::North;
  if (s == "E") return Heading::East;
  if (s == "S") return Heading::South;
  if (s == "W") return Heading::West;
  throw DomainError("unknown heading: " + s);
}

inline Cell heading_delta(Heading h) {
  switch (h) {
    case Heading::North: return {0, 1};
    case Heading::East: return {1, 0};
    case Heading::South: return {0, -1};
    case Heading::West: return {-1, 0};
  }
  return {0, 0};
}

inline Heading turn_left(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}

inline Heading turn_right(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

enum class Action : std::uint8_t { Forward = 0, TurnLeft = 1, TurnRight = 2, Stop = 3 };

inline constexpr std::array<Action, 4> kAllActions = {
    Action::Forward, Action::TurnLeft, Action::TurnRight, Action::Stop};

inline const char* to_string(Action a) {
  switch (a) {
    case Action::Forward: return "Forward";
    case Action::TurnLeft: return "TurnLeft";
    case Action::TurnRight: return "TurnRight";
    case Action::Stop: return "Stop";
  }
  return "?";
}

inline Action action_from_string(const std::string& s) {
  if (s == "Forward") return Action::Forward;
  if (s == "TurnLeft") return Action::TurnLeft;
  if (s == "TurnRight") return Action::TurnRight;
  if (s == "Stop") return Action::Stop;
  throw DomainError("unknown action: " + s);
}

// Rectangular grid environment. Cells outside the bounds and cells in
// `obstacles` are blocked; everything else is free. Immutable during a run.
class WorldModel {
 public:
  WorldModel() = default;
  WorldModel(int width, int height, std::set<Cell> obstacles = {}, std::string name = "")
      : width_(width), height_(height), obstacles_(std::move(obstacles)), name_(std::move(name)) {
    if (width_ < 1 || height_ < 1)
      throw ModelError("world dimensions must be at least 1x1");
    for (const Cell& c : obstacles_)
      if (!in_bounds(c))
        throw ModelError("obstacle outside grid: (" + std::to_string(c.col) + "," +
                         std::to_string(c.row) + ")");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const std::string& name() const { return name_; }
  const std::set<Cell>& obstacles() const { return obstacles_; }

  bool in_bounds(const Cell& c) const {
    return c.col >= 0 && c.col < width_ && c.row >= 0 && c.row < height_;
  }

  bool blocked(const Cell& c) const { return !in_bounds(c) || obstacles_.count(c) > 0; }
  bool free(const Cell& c) const { return !blocked(c); }

  int free_cell_count() const {
    return width_ * height_ - static_cast<int>(obstacles_.size());
  }

  friend bool operator==(const WorldModel&, const WorldModel&) = default;

 private:
  int width_ = 1;
  int height_ = 1;
  std::set<Cell> obstacles_;
  std::string name_;
};

// Robot state. `bumped` is true iff the immediately preceding Forward was
// blocked; `odometer` counts successful Forward moves. Both are part of the
// state so that every sensor is a pure function of it.
struct PhysicalState {
  Cell pos;
  Heading heading = Heading::North;
  bool bumped = false;
  long odometer = 0;

  friend bool operator==(const PhysicalState&, const PhysicalState&) = default;
};

inline bool valid_state(const PhysicalState& x, const WorldModel& w) {
  return w.free(x.pos);
}

inline void require_valid_state(const PhysicalState& x, const WorldModel& w) {
  if (!valid_state(x, w))
    throw ModelError("robot state at blocked cell (" + std::to_string(x.pos.col) + "," +
                     std::to_string(x.pos.row) + ")");
}

// Deterministic state transition. Forward advances one cell along the heading
// when the target cell is free; a blocked Forward leaves the position
// unchanged and sets `bumped`. Turns rotate 90 degrees. Every action other
// than a blocked Forward clears `bumped`.
inline PhysicalState transition(const PhysicalState& x, Action u, const WorldModel& w) {
  require_valid_state(x, w);
  PhysicalState next = x;
  switch (u) {
    case Action::Forward: {
      const Cell d = heading_delta(x.heading);
      const Cell target{x.pos.col + d.col, x.pos.row + d.row};
      if (w.free(target)) {
        next.pos = target;
        next.odometer += 1;
        next.bumped = false;
      } else {
        next.bumped = true;
      }
      break;
    }
    case Action::TurnLeft:
      next.heading = turn_left(x.heading);
      next.bumped = false;
      break;
    case Action::TurnRight:
      next.heading = turn_right(x.heading);
      next.bumped = false;
      break;
    case Action::Stop:
      next.bumped = false;
      break;
  }
  return next;
}

}  // namespace vrr

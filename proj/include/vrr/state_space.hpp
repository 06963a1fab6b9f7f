#pragma once

#include <cstdint>
#include <vector>

#include "vrr/errors.hpp"
#include "vrr/world.hpp"

namespace vrr {

using StateId = std::uint32_t;

// Dense enumeration of every valid robot state of a world: free cells in
// row-major order (row, then col), headings in N,E,S,W order, bumped flag
// false then true. The odometer is not part of the enumerated space; decoded
// states carry odometer 0.
class StateEnumeration {
 public:
  explicit StateEnumeration(const WorldModel& w) : world_(w) {
    cell_index_.assign(static_cast<size_t>(w.width()) * w.height(), -1);
    for (int row = 0; row < w.height(); ++row) {
      for (int col = 0; col < w.width(); ++col) {
        const Cell c{col, row};
        if (w.free(c)) {
          cell_index_[flat(c)] = static_cast<int>(cells_.size());
          cells_.push_back(c);
        }
      }
    }
  }

  const WorldModel& world() const { return world_; }

  StateId size() const { return static_cast<StateId>(cells_.size() * 8); }

  PhysicalState state_of(StateId id) const {
    if (id >= size()) throw DomainError("state id out of range");
    PhysicalState x;
    x.bumped = (id & 1) != 0;
    x.heading = static_cast<Heading>((id >> 1) & 3);
    x.pos = cells_[id >> 3];
    return x;
  }

  StateId id_of(const PhysicalState& x) const {
    require_valid_state(x, world_);
    const int ci = cell_index_[flat(x.pos)];
    return static_cast<StateId>(ci * 8 + static_cast<int>(x.heading) * 2 +
                                (x.bumped ? 1 : 0));
  }

 private:
  size_t flat(const Cell& c) const {
    return static_cast<size_t>(c.row) * world_.width() + c.col;
  }

  WorldModel world_;
  std::vector<Cell> cells_;
  std::vector<int> cell_index_;
};

}  // namespace vrr

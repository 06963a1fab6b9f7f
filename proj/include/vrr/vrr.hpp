#pragma once

#include "vrr/automaton.hpp"
#include "vrr/display.hpp"
#include "vrr/errors.hpp"
#include "vrr/harness.hpp"
#include "vrr/io.hpp"
#include "vrr/partition.hpp"
#include "vrr/sensor.hpp"
#include "vrr/state_space.hpp"
#include "vrr/vwg.hpp"
#include "vrr/world.hpp"

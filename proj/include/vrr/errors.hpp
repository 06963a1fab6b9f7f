#pragma once

#include <stdexcept>
#include <string>

namespace vrr {

// A state or world that violates model invariants (corrupt scenario).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// An argument outside an operation's domain (unknown symbol, mismatched universes, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An inconsistent configuration (sensor not covered by the mix, missing renderer, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The automaton admits no synchronizing word.
struct NotSynchronizable : std::runtime_error {
  explicit NotSynchronizable(const std::string& what) : std::runtime_error(what) {}
};

// No observation sequence reaches the requested target state.
struct NoSequence : std::runtime_error {
  explicit NoSequence(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for an exponential-time oracle.
struct SizeLimit : std::runtime_error {
  explicit SizeLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vrr

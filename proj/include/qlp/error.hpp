#pragma once

#include <stdexcept>

namespace qlp {

/// A value lies outside the mathematical domain of an operation
/// (x outside [0,1], tau < 1, non-finite angles, bad probability vectors).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A raw sensor reading lies outside its channel bounds.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Shape mismatch between vectors, frames, states or qubit indices.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent sensor configuration, or unreadable files.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qlp

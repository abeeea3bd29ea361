#pragma once

#include <stdexcept>
#include <string>

namespace smoothctl {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs at least one sample was called on an empty dataset.
class NoDataError : public Error {
 public:
  using Error::Error;
};

/// alpha + beta < 0: the blended objective would reward widening the bound gap.
class AntiObjectiveError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration requested above the supported dimension cap.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A grid request exceeds the configured point budget.
class GridBudgetError : public Error {
 public:
  using Error::Error;
};

/// Declared structural knowledge contradicts the data (lower bound above upper).
class SideInfoError : public Error {
 public:
  using Error::Error;
};

/// Aircraft airspeed fell to zero or below during integration.
class StallError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace smoothctl

#pragma once

#include <stdexcept>
#include <string>

namespace mohl {

/// Base class for all solver and model errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// bvp errors
class NonConvergence : public Error {
public:
  using Error::Error;
};
class MeshOverflow : public Error {
public:
  using Error::Error;
};
class SingularJacobian : public Error {
public:
  using Error::Error;
};
class OutOfDomain : public Error {
public:
  using Error::Error;
};

// physics errors
class OutOfRange : public Error {
public:
  using Error::Error;
};
class NonPositivePressure : public Error {
public:
  using Error::Error;
};
class InvalidReference : public Error {
public:
  using Error::Error;
};
class MissingMoistureSolution : public Error {
public:
  using Error::Error;
};

// stepper errors
class InsufficientHistory : public Error {
public:
  using Error::Error;
};

/// Solver failure annotated with the time layer where it occurred.
class TimeLayerError : public Error {
public:
  TimeLayerError(const std::string& what, double t_star, int layer)
      : Error(what), t_star(t_star), layer(layer) {}
  double t_star;
  int layer;
};

// reference-solver errors
class PicardNonConvergence : public Error {
public:
  PicardNonConvergence(const std::string& what, int layer, double gap)
      : Error(what), layer(layer), iterate_gap(gap) {}
  int layer;
  double iterate_gap;
};
class CflViolation : public Error {
public:
  CflViolation(const std::string& what, double admissible_dt)
      : Error(what), admissible_dt(admissible_dt) {}
  double admissible_dt;
};

// postprocess / io errors
class GridMismatch : public Error {
public:
  using Error::Error;
};
class ZeroMeasurement : public Error {
public:
  using Error::Error;
};
class IoFailure : public Error {
public:
  using Error::Error;
};

// case / config errors
class UnknownPreset : public Error {
public:
  using Error::Error;
};
class MissingData : public Error {
public:
  using Error::Error;
};
class SchemaViolation : public Error {
public:
  using Error::Error;
};
class NonMonotoneTime : public Error {
public:
  using Error::Error;
};
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace mohl

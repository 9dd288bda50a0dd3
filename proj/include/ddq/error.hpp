#pragma once

#include <stdexcept>
#include <string>

namespace ddq {

// Base for all library errors. Messages are module-qualified, e.g.
// "assignment: fewer queries (2) than ground truths (3)".
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Undefined geometry (e.g. GIoU of two degenerate boxes).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Shape/size violations: zero-sized resize target, 2S > C, inconsistent
// pyramid levels.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Assignment cannot be completed (fewer queries than ground truths).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input (missing class score, malformed scene file).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Metric undefined for the given input (e.g. mMR with zero ground truths).
class MetricError : public Error {
 public:
  using Error::Error;
};

// Scene generation failed to satisfy its constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Bad run configuration (unknown key, wrong type, missing file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddq

#pragma once
#include <stdexcept>
#include <string>

namespace wg {

// Base class for all failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mesh construction or topology violations.
struct InvalidMeshError : Error {
  using Error::Error;
};

// Polynomial degree outside the supported range.
struct UnsupportedDegreeError : Error {
  using Error::Error;
};

// Out-of-range basis, node, or dof index.
struct IndexError : Error {
  using Error::Error;
};

// Parameter outside its admissible range.
struct InvalidParameterError : Error {
  using Error::Error;
};

// Least-squares matrix is numerically rank-deficient.
// `tag` carries the patch id when raised from a patch fit, else -1.
struct RankDeficientError : Error {
  int tag;
  explicit RankDeficientError(const std::string& msg, int tag_ = -1)
      : Error(msg), tag(tag_) {}
};

// Linear solver failed to reach the requested residual.
// `residual` is the best achieved relative residual.
struct SolverFailureError : Error {
  double residual;
  explicit SolverFailureError(const std::string& msg, double res)
      : Error(msg), residual(res) {}
};

// Invalid run configuration (bad flag value, unwritable output, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace wg

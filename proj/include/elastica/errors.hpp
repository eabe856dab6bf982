#pragma once

#include <stdexcept>
#include <string>

namespace elastica {

// Failure kinds. The CLI maps degenerate_edge / degenerate_landmarks /
// no_convergence to exit code 3 (numerical abort) and everything else to 2.
enum class ErrorKind {
  schema,
  validation,
  not_sum_zero,
  not_ds_mean_zero,
  constraint_violation,
  degenerate_edge,
  degenerate_landmarks,
  no_convergence,
  point_on_curve,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Malformed document structure (missing key, wrong type/arity).
struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error(ErrorKind::schema, m) {}
};

// Well-formed data that violates a declared invariant or precondition.
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(ErrorKind::validation, m) {}
};

struct NotSumZero : Error {
  explicit NotSumZero(const std::string& m) : Error(ErrorKind::not_sum_zero, m) {}
};

struct NotDsMeanZero : Error {
  explicit NotDsMeanZero(const std::string& m) : Error(ErrorKind::not_ds_mean_zero, m) {}
};

struct ConstraintViolation : Error {
  explicit ConstraintViolation(const std::string& m)
      : Error(ErrorKind::constraint_violation, m) {}
};

struct DegenerateEdge : Error {
  explicit DegenerateEdge(const std::string& m) : Error(ErrorKind::degenerate_edge, m) {}
};

struct DegenerateLandmarks : Error {
  explicit DegenerateLandmarks(const std::string& m)
      : Error(ErrorKind::degenerate_landmarks, m) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& m) : Error(ErrorKind::no_convergence, m) {}
};

struct PointOnCurve : Error {
  explicit PointOnCurve(const std::string& m) : Error(ErrorKind::point_on_curve, m) {}
};

}  // namespace elastica

#ifndef TORIC_ERRORS_HPP
#define TORIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toric {

// One code per failure mode; the C API maps these 1:1 onto ts_status values.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  unbounded,
  degenerate,
  inconsistent,
  non_convergent,
  non_positive_weight,
  empty_box,
  unknown_preset,
  not_fano,
  origin_not_interior,
  max_iterations,
  closure_failure,
  non_positive_profile,
  gradient_out_of_polytope,
  singular_hessian,
  parse_error,
  schema_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::unbounded: return "Unbounded";
    case ErrorCode::degenerate: return "Degenerate";
    case ErrorCode::inconsistent: return "Inconsistent";
    case ErrorCode::non_convergent: return "NonConvergent";
    case ErrorCode::non_positive_weight: return "NonPositiveWeight";
    case ErrorCode::empty_box: return "EmptyBox";
    case ErrorCode::unknown_preset: return "UnknownPreset";
    case ErrorCode::not_fano: return "NotFano";
    case ErrorCode::origin_not_interior: return "OriginNotInterior";
    case ErrorCode::max_iterations: return "MaxIterations";
    case ErrorCode::closure_failure: return "ClosureFailure";
    case ErrorCode::non_positive_profile: return "NonPositiveProfile";
    case ErrorCode::gradient_out_of_polytope: return "GradientOutOfPolytope";
    case ErrorCode::singular_hessian: return "SingularHessian";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace toric

#endif

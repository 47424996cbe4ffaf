#pragma once

#include <stdexcept>
#include <string>

namespace linefields {

// Failure categories surfaced by the library.  Tests match on the code, the
// message carries the human-readable detail (offending ids, line numbers).
enum class ErrorCode {
  NonManifold,
  Disconnected,
  DegenerateFace,
  ClosedInput,
  ParseError,
  NonTriangular,
  DegenerateTriangle,
  NoPositions,
  BranchCut,
  Rounding,
  BadTopology,
  BadSum,
  PrescriptionOverflow,
  NotNormal,
  HasFixedPoints,
  NotInvariant,
  BadParams,
  HolonomyObstruction,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonManifold: return "NON_MANIFOLD";
    case ErrorCode::Disconnected: return "DISCONNECTED";
    case ErrorCode::DegenerateFace: return "DEGENERATE_FACE";
    case ErrorCode::ClosedInput: return "CLOSED_INPUT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::NonTriangular: return "NON_TRIANGULAR";
    case ErrorCode::DegenerateTriangle: return "DEGENERATE_TRIANGLE";
    case ErrorCode::NoPositions: return "NO_POSITIONS";
    case ErrorCode::BranchCut: return "BRANCH_CUT";
    case ErrorCode::Rounding: return "ROUNDING";
    case ErrorCode::BadTopology: return "BAD_TOPOLOGY";
    case ErrorCode::BadSum: return "BAD_SUM";
    case ErrorCode::PrescriptionOverflow: return "PRESCRIPTION_OVERFLOW";
    case ErrorCode::NotNormal: return "NOT_NORMAL";
    case ErrorCode::HasFixedPoints: return "HAS_FIXED_POINTS";
    case ErrorCode::NotInvariant: return "NOT_INVARIANT";
    case ErrorCode::BadParams: return "BAD_PARAMS";
    case ErrorCode::HolonomyObstruction: return "HOLONOMY_OBSTRUCTION";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace linefields

#include "curvcone/error.hpp"

namespace curvcone {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::MetricNotSPD: return "MetricNotSPD";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NoBoundaryFound: return "NoBoundaryFound";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NotLocallyConformallyFlat: return "NotLocallyConformallyFlat";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace curvcone

#include "mrprov/error.hpp"

namespace mrprov {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::InvalidRange: return "invalid range";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::EmptyInput: return "empty input";
    case ErrorCode::AllZeroActuals: return "all actuals zero";
    case ErrorCode::NonPositiveGroundTruth: return "non-positive ground truth";
    case ErrorCode::BandTooNarrow: return "band too narrow";
    case ErrorCode::ZeroVariance: return "zero variance";
  }
  return "unknown error";
}

}  // namespace mrprov

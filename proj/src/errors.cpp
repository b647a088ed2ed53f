#include "matchgap/errors.hpp"

namespace matchgap {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kUnknownPreset:
      return "unknown_preset";
    case Errc::kInvalidParam:
      return "invalid_param";
    case Errc::kNonIntegralSize:
      return "non_integral_size";
    case Errc::kOverflowScale:
      return "overflow_scale";
    case Errc::kOutOfRangeLevel:
      return "out_of_range_level";
    case Errc::kVertexOutOfRange:
      return "vertex_out_of_range";
    case Errc::kSelfLoopQuery:
      return "self_loop_query";
    case Errc::kBudgetExhausted:
      return "budget_exhausted";
    case Errc::kUnbalancedParts:
      return "unbalanced_parts";
    case Errc::kUnknownEstimator:
      return "unknown_estimator";
    case Errc::kFormatError:
      return "format_error";
    case Errc::kIoError:
      return "io_error";
    case Errc::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace matchgap

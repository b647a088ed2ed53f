#ifndef MATCHGAP_ERRORS_HPP
#define MATCHGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace matchgap {

// Machine-readable reason attached to every exception thrown by this library.
enum class Errc {
  kUnknownPreset,
  kInvalidParam,
  kNonIntegralSize,
  kOverflowScale,
  kOutOfRangeLevel,
  kVertexOutOfRange,
  kSelfLoopQuery,
  kBudgetExhausted,
  kUnbalancedParts,
  kUnknownEstimator,
  kFormatError,
  kIoError,
  kInternal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string("[") + errc_name(code) + "] " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Query budget ran out mid-run; carries how far the run got.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::size_t steps_taken)
      : Error(Errc::kBudgetExhausted,
              "query budget exhausted after " + std::to_string(steps_taken) +
                  " queries"),
        steps_taken_(steps_taken) {}

  std::size_t steps_taken() const noexcept { return steps_taken_; }

 private:
  std::size_t steps_taken_;
};

}  // namespace matchgap

#endif  // MATCHGAP_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scatcert {

enum class ErrorCode {
  DivergentNorm,
  NoMinimizer,
  IllConditioned,
  StepperFailure,
  Inconsistent,
  NotConverged,
  InconsistentB,
  NotCertifiable,
  SearchExhausted,
  DegenerateSample,
  Config,
};

std::string_view to_string(ErrorCode code);

/// Numerical or configuration failure raised by the pipeline.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivergentNorm: return "DivergentNorm";
    case ErrorCode::NoMinimizer: return "NoMinimizer";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::StepperFailure: return "StepperFailure";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InconsistentB: return "InconsistentB";
    case ErrorCode::NotCertifiable: return "NotCertifiable";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace scatcert

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cgo {

enum class ErrorCode {
    invalid_grid,
    nyquist_violation,
    under_resolved_bump,
    invalid_exponent,
    hypothesis_violation,
    grid_mismatch,
    tau_too_small,
    order_out_of_range,
    near_singular,
    config_error,
    io_error,
};

std::string_view to_string(ErrorCode code);

// Every precondition failure in the library surfaces as this exception; the
// code lets callers (and the CLI verdicts) distinguish e.g. a non-contracting
// series from a bad grid without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace cgo

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monogamy {

enum class ErrorCode {
  invalid_normalization,
  dimension_too_large,
  index_out_of_range,
  non_square_input,
  wrong_dimensions,
  domain_error,
  not_an_isometry,
  rank_mismatch,
  shape_mismatch,
  precondition_violated,
  invalid_m,
  invalid_range,
  io_error,
  config_invalid,
  unknown_bound_id,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this exception; `code()` lets
// callers (and the CLI exit-code mapping) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace monogamy

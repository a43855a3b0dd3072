#include "monogamy/error.hpp"

namespace monogamy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_normalization: return "invalid-normalization";
    case ErrorCode::dimension_too_large: return "dimension-too-large";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::non_square_input: return "non-square-input";
    case ErrorCode::wrong_dimensions: return "wrong-dimensions";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::not_an_isometry: return "not-an-isometry";
    case ErrorCode::rank_mismatch: return "rank-mismatch";
    case ErrorCode::shape_mismatch: return "shape-mismatch";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::invalid_m: return "invalid-m";
    case ErrorCode::invalid_range: return "invalid-range";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::config_invalid: return "config-invalid";
    case ErrorCode::unknown_bound_id: return "unknown-bound-id";
  }
  return "unknown-error";
}

}  // namespace monogamy

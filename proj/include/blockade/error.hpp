#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockade {

enum class Errc {
  invalid_dimension,
  out_of_range,
  invalid_parameter,
  invalid_order,
  invalid_window,
  dimension_mismatch,
  truncation_insufficient,
  stiffness,
  positivity,
  non_unique_steady_state,
  oracle_scale,
  unknown_scenario,
  parse,
  io,
};

std::string_view to_string(Errc code);

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace blockade

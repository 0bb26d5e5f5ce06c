#include "blockade/error.hpp"

namespace blockade {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::out_of_range: return "out-of-range";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::invalid_order: return "invalid-order";
    case Errc::invalid_window: return "invalid-window";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::truncation_insufficient: return "truncation-insufficient";
    case Errc::stiffness: return "stiffness";
    case Errc::positivity: return "positivity";
    case Errc::non_unique_steady_state: return "non-unique-steady-state";
    case Errc::oracle_scale: return "oracle-scale";
    case Errc::unknown_scenario: return "unknown-scenario";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace blockade

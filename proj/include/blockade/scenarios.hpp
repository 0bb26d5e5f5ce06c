#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/lindblad.hpp"
#include "blockade/model.hpp"
#include "blockade/observables.hpp"

namespace blockade {

struct Scenario {
  std::string name;
  SystemParams params;
  DriveSpec drive;
  double t_end = 15.0;
  int target_n = 2;
  Window window{10.0, 14.0};
  double snapshot_time = 14.0;
  IntegratorOptions options;

  bool operator==(const Scenario&) const = default;
};

/// Throws invalid_parameter / invalid_window when the bundle is inconsistent.
void validate(const Scenario& s);

/// True when the tone detunings equal resonant_detunings(size, U).
bool follows_resonant_ladder(const Scenario& s);

const std::vector<std::string>& builtin_names();
Scenario builtin(std::string_view name);

struct ParsedScenario {
  Scenario scenario;
  std::vector<std::string> notes;  // defaults that were applied
};

ParsedScenario parse_scenario(std::string_view text, std::string_view source = "<string>");
ParsedScenario load_scenario(const std::filesystem::path& path);
std::string serialize(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Resolves a builtin name or a scenario file path.
ParsedScenario resolve_scenario(std::string_view ref);

/// Applies `key=value` using the file keys plus eps<k> / det<k> for single
/// tones. Changing u on a resonant-ladder drive re-derives its detunings.
/// Returns notes describing side effects.
std::vector<std::string> apply_override(Scenario& s, std::string_view key, std::string_view value);
std::vector<std::string> apply_override(Scenario& s, std::string_view assignment);

}  // namespace blockade

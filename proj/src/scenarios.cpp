#include "blockade/scenarios.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "blockade/error.hpp"

namespace blockade {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (errno != 0 || end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_integer(std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(buf.c_str(), &end, 10);
  if (errno != 0 || end != buf.c_str() + buf.size()) return std::nullopt;
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scenario make(std::string name, double u, double delta, std::size_t dim,
              std::vector<DriveTone> tones, int target) {
  Scenario s;
  s.name = std::move(name);
  s.params.kerr_u = u;
  s.params.delta = delta;
  s.params.dim = dim;
  s.drive = DriveSpec(std::move(tones));
  s.target_n = target;
  return s;
}

Scenario ladder(std::string name, double u, std::vector<double> amplitudes, std::size_t dim = 15) {
  const int n = static_cast<int>(amplitudes.size());
  const auto det = resonant_detunings(n, u);
  std::vector<DriveTone> tones;
  for (int k = 0; k < n; ++k) tones.push_back({amplitudes[static_cast<std::size_t>(k)], det[static_cast<std::size_t>(k)]});
  return make(std::move(name), u, 0.0, dim, std::move(tones), n);
}

const std::map<std::string, Scenario, std::less<>>& catalog() {
  static const auto table = [] {
    std::map<std::string, Scenario, std::less<>> m;
    auto add = [&m](Scenario s) { m.emplace(s.name, std::move(s)); };
    add(ladder("fig1", 10, {0.1, 0.1}));
    add(ladder("fig2a", 10, {0.1, 0.2}));
    add(ladder("fig2b", 10, {0.2, 0.1}));
    add(ladder("fig3a", 3, {0.1, 0.1}));
    add(ladder("fig3b", 5, {0.1, 0.1}));
    add(ladder("fig3c", 10, {0.1, 0.1}));
    // Single tone at omega_a + U: delta = -U in its own frame, two-photon resonant.
    add(make("fig4_single", 10, -10, 20, {{1.2, 0.0}}, 2));
    add(ladder("fig4_double", 10, {0.5, 0.7}, 20));
    add(ladder("fig5", 10, {0.1, 0.1, 0.1}));
    add(ladder("fig6a", 10, {0.1, 0.1, 0.2}));
    add(ladder("fig6b", 10, {0.1, 0.2, 0.1}));
    add(ladder("fig6c", 10, {0.1, 0.2, 0.2}));
    add(ladder("fig7a", 3, {0.1, 0.1, 0.1}));
    add(ladder("fig7b", 5, {0.1, 0.1, 0.1}));
    add(ladder("fig7c", 10, {0.1, 0.1, 0.1}));
    return m;
  }();
  return table;
}

enum class Section { none, system, drive, evaluation, integrator };

std::optional<Section> section_named(std::string_view name) {
  if (name == "system") return Section::system;
  if (name == "drive") return Section::drive;
  if (name == "evaluation") return Section::evaluation;
  if (name == "integrator") return Section::integrator;
  return std::nullopt;
}

const std::map<std::string, Section, std::less<>>& key_homes() {
  static const std::map<std::string, Section, std::less<>> homes{
      {"name", Section::none},
      {"u", Section::system},
      {"delta", Section::system},
      {"gamma", Section::system},
      {"dim", Section::system},
      {"tone", Section::drive},
      {"t_end", Section::evaluation},
      {"target_n", Section::evaluation},
      {"window_start", Section::evaluation},
      {"window_end", Section::evaluation},
      {"snapshot_time", Section::evaluation},
      {"abs_tol", Section::integrator},
      {"rel_tol", Section::integrator},
      {"max_step", Section::integrator},
      {"output_interval", Section::integrator},
      {"truncation_tail_tol", Section::integrator},
  };
  return homes;
}

// Sets one scalar key; returns false for unknown keys, throws on bad values.
bool set_scalar(Scenario& s, std::string_view key, std::string_view value, const std::string& where) {
  auto number = [&]() {
    const auto v = to_double(value);
    if (!v) throw Error(Errc::parse, where + ": '" + std::string(key) + "' expects a number, got '" +
                                         std::string(trim(value)) + "'");
    return *v;
  };
  auto integer = [&]() {
    const auto v = to_integer(value);
    if (!v) throw Error(Errc::parse, where + ": '" + std::string(key) + "' expects an integer, got '" +
                                         std::string(trim(value)) + "'");
    return *v;
  };
  if (key == "name") {
    s.name = std::string(trim(value));
    if (s.name.empty()) throw Error(Errc::parse, where + ": empty name");
  } else if (key == "u") {
    s.params.kerr_u = number();
  } else if (key == "delta") {
    s.params.delta = number();
  } else if (key == "gamma") {
    s.params.gamma = number();
  } else if (key == "dim") {
    const long d = integer();
    if (d < 2) throw Error(Errc::parse, where + ": dim must be >= 2");
    s.params.dim = static_cast<std::size_t>(d);
  } else if (key == "t_end") {
    s.t_end = number();
  } else if (key == "target_n") {
    s.target_n = static_cast<int>(integer());
  } else if (key == "window_start") {
    s.window.start = number();
  } else if (key == "window_end") {
    s.window.end = number();
  } else if (key == "snapshot_time") {
    s.snapshot_time = number();
  } else if (key == "abs_tol") {
    s.options.abs_tol = number();
  } else if (key == "rel_tol") {
    s.options.rel_tol = number();
  } else if (key == "max_step") {
    s.options.max_step = number();
  } else if (key == "output_interval") {
    s.options.output_interval = number();
  } else if (key == "truncation_tail_tol") {
    s.options.truncation_tail_tol = number();
  } else {
    return false;
  }
  return true;
}

}  // namespace

void validate(const Scenario& s) {
  validate(s.params);
  validate(s.options);
  if (s.drive.size() == 0) throw Error(Errc::invalid_parameter, "scenario has no drive tones");
  if (!(s.t_end > 0.0)) throw Error(Errc::invalid_parameter, "t_end must be positive");
  if (s.target_n < 1 || s.target_n > 5) {
    throw Error(Errc::invalid_parameter, "target_n must be between 1 and 5");
  }
  if (!(s.window.end > s.window.start)) throw Error(Errc::invalid_window, "window_end must exceed window_start");
  if (s.window.end > s.t_end) throw Error(Errc::invalid_window, "window_end exceeds t_end");
  if (s.snapshot_time < 0.0 || s.snapshot_time > s.t_end) {
    throw Error(Errc::invalid_window, "snapshot_time must lie in [0, t_end]");
  }
}

bool follows_resonant_ladder(const Scenario& s) {
  const auto expected = resonant_detunings(static_cast<int>(s.drive.size()), s.params.kerr_u);
  const auto actual = s.drive.detunings();
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (std::abs(expected[k] - actual[k]) > 1e-12 * std::max(1.0, std::abs(expected[k]))) return false;
  }
  return true;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, unused] : catalog()) out.push_back(name);
    return out;
  }();
  return names;
}

Scenario builtin(std::string_view name) {
  const auto& table = catalog();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string list;
    for (const auto& n : builtin_names()) list += (list.empty() ? "" : ", ") + n;
    throw Error(Errc::unknown_scenario,
                "unknown scenario '" + std::string(name) + "'; valid names: " + list);
  }
  return it->second;
}

ParsedScenario parse_scenario(std::string_view text, std::string_view source) {
  ParsedScenario out;
  Scenario& s = out.scenario;
  s.name.clear();
  std::vector<DriveTone> tones;
  std::set<std::string, std::less<>> seen;
  Section section = Section::none;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw Error(Errc::parse, where + ": malformed section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      const auto sec = section_named(name);
      if (!sec) throw Error(Errc::parse, where + ": unknown section [" + std::string(name) + "]");
      section = *sec;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::parse, where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto home = key_homes().find(key);
    if (home == key_homes().end()) {
      throw Error(Errc::parse, where + ": unknown key '" + std::string(key) + "'");
    }
    if (section != Section::none && home->second != Section::none && home->second != section) {
      throw Error(Errc::parse, where + ": key '" + std::string(key) + "' does not belong in this section");
    }

    if (key == "tone") {
      const auto comma = value.find(',');
      if (comma == std::string_view::npos) {
        throw Error(Errc::parse, where + ": 'tone' expects '<amplitude>, <detuning>'");
      }
      const auto amp = to_double(value.substr(0, comma));
      const auto det = to_double(value.substr(comma + 1));
      if (!amp || !det) throw Error(Errc::parse, where + ": 'tone' values must be numbers");
      tones.push_back({*amp, *det});
      continue;
    }
    if (!seen.insert(std::string(key)).second) {
      throw Error(Errc::parse, where + ": duplicate key '" + std::string(key) + "'");
    }
    set_scalar(s, key, value, where);
  }

  const std::string src(source);
  if (tones.empty()) throw Error(Errc::parse, src + ": no 'tone' lines");
  try {
    s.drive = DriveSpec(std::move(tones));
  } catch (const Error& e) {
    throw Error(Errc::invalid_parameter, src + ": " + e.what());
  }

  if (!seen.contains("u")) throw Error(Errc::parse, src + ": missing required key 'u'");
  auto note_default = [&](std::string_view key, const std::string& value) {
    if (!seen.contains(key)) out.notes.push_back("default " + std::string(key) + " = " + value);
  };
  if (s.name.empty()) {
    s.name = std::filesystem::path(src).stem().string();
    if (s.name.empty() || s.name == "<string>") s.name = "scenario";
    out.notes.push_back("default name = " + s.name);
  }
  const Scenario defaults;
  note_default("delta", fmt(defaults.params.delta));
  note_default("gamma", fmt(defaults.params.gamma));
  note_default("dim", std::to_string(defaults.params.dim));
  note_default("t_end", fmt(defaults.t_end));
  note_default("target_n", std::to_string(defaults.target_n));
  note_default("window_start", fmt(defaults.window.start));
  note_default("window_end", fmt(defaults.window.end));
  note_default("snapshot_time", fmt(defaults.snapshot_time));
  note_default("abs_tol", fmt(defaults.options.abs_tol));
  note_default("rel_tol", fmt(defaults.options.rel_tol));
  note_default("max_step", fmt(defaults.options.max_step));
  note_default("output_interval", fmt(defaults.options.output_interval));
  note_default("truncation_tail_tol", fmt(defaults.options.truncation_tail_tol));

  try {
    validate(s);
  } catch (const Error& e) {
    throw Error(e.code(), src + ": " + e.what());
  }
  return out;
}

ParsedScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize(const Scenario& s) {
  std::ostringstream os;
  os << "# blockade-lab scenario\n";
  os << "name = " << s.name << "\n\n";
  os << "[system]\n";
  os << "u = " << fmt(s.params.kerr_u) << "\n";
  os << "delta = " << fmt(s.params.delta) << "\n";
  os << "gamma = " << fmt(s.params.gamma) << "\n";
  os << "dim = " << s.params.dim << "\n\n";
  os << "[drive]\n";
  for (const auto& t : s.drive.tones()) os << "tone = " << fmt(t.amplitude) << ", " << fmt(t.detuning) << "\n";
  os << "\n[evaluation]\n";
  os << "t_end = " << fmt(s.t_end) << "\n";
  os << "target_n = " << s.target_n << "\n";
  os << "window_start = " << fmt(s.window.start) << "\n";
  os << "window_end = " << fmt(s.window.end) << "\n";
  os << "snapshot_time = " << fmt(s.snapshot_time) << "\n\n";
  os << "[integrator]\n";
  os << "abs_tol = " << fmt(s.options.abs_tol) << "\n";
  os << "rel_tol = " << fmt(s.options.rel_tol) << "\n";
  os << "max_step = " << fmt(s.options.max_step) << "\n";
  os << "output_interval = " << fmt(s.options.output_interval) << "\n";
  os << "truncation_tail_tol = " << fmt(s.options.truncation_tail_tol) << "\n";
  return os.str();
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write scenario file " + path.string());
  out << serialize(s);
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

ParsedScenario resolve_scenario(std::string_view ref) {
  const auto& table = catalog();
  if (const auto it = table.find(ref); it != table.end()) return {it->second, {}};
  const std::filesystem::path path(ref);
  if (std::filesystem::exists(path)) return load_scenario(path);
  return {builtin(ref), {}};  // throws with the catalog listing
}

std::vector<std::string> apply_override(Scenario& s, std::string_view key, std::string_view value) {
  std::vector<std::string> notes;
  const std::string where = "--set " + std::string(key);
  key = trim(key);

  auto tone_index = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (!key.starts_with(prefix)) return std::nullopt;
    const auto k = to_integer(key.substr(prefix.size()));
    if (!k || *k < 0) return std::nullopt;
    return static_cast<std::size_t>(*k);
  };

  Scenario next = s;
  if (const auto k = tone_index("eps")) {
    const auto v = to_double(value);
    if (!v) throw Error(Errc::parse, where + ": expects a number");
    if (*k >= next.drive.size()) throw Error(Errc::out_of_range, where + ": no tone " + std::to_string(*k));
    auto tones = next.drive.tones();
    tones[*k].amplitude = *v;
    next.drive = DriveSpec(std::move(tones));
  } else if (const auto kd = tone_index("det")) {
    const auto v = to_double(value);
    if (!v) throw Error(Errc::parse, where + ": expects a number");
    if (*kd >= next.drive.size()) throw Error(Errc::out_of_range, where + ": no tone " + std::to_string(*kd));
    auto tones = next.drive.tones();
    tones[*kd].detuning = *v;
    next.drive = DriveSpec(std::move(tones));
  } else if (key == "u") {
    const bool retune = s.drive.size() > 1 && follows_resonant_ladder(s);
    if (!set_scalar(next, key, value, where)) throw Error(Errc::parse, where + ": unknown key");
    if (retune) {
      const auto det = resonant_detunings(static_cast<int>(next.drive.size()), next.params.kerr_u);
      auto tones = next.drive.tones();
      for (std::size_t k = 0; k < tones.size(); ++k) tones[k].detuning = det[k];
      next.drive = DriveSpec(std::move(tones));
      notes.push_back("detunings re-derived as 2kU for u = " + fmt(next.params.kerr_u));
    }
  } else if (key == "tone") {
    throw Error(Errc::parse, where + ": use eps<k>= / det<k>= to change individual tones");
  } else if (!set_scalar(next, key, value, where)) {
    throw Error(Errc::parse, where + ": unknown key");
  }
  validate(next);
  s = std::move(next);
  return notes;
}

std::vector<std::string> apply_override(Scenario& s, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(Errc::parse, "override '" + std::string(assignment) + "' must be key=value");
  }
  return apply_override(s, assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace blockade

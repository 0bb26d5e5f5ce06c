#include <doctest.h>

#include <filesystem>
#include <string>

#include "blockade/error.hpp"
#include "blockade/scenarios.hpp"

using namespace blockade;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(Errc::io, "");
}

bool contains(const std::string& haystack, std::string_view needle) {
  return haystack.find(needle) != std::string::npos;
}

constexpr const char* kMinimal = R"(
# two resonant tones
[system]
u = 10
[drive]
tone = 0.1, 0
tone = 0.1, 20
)";

}  // namespace

TEST_CASE("builtin catalog") {
  CHECK(builtin_names().size() == 15);

  const auto fig1 = builtin("fig1");
  CHECK(fig1.params.kerr_u == 10.0);
  CHECK(fig1.params.delta == 0.0);
  CHECK(fig1.params.gamma == 1.0);
  CHECK(fig1.params.dim == 15);
  CHECK(fig1.drive.amplitudes() == std::vector<double>{0.1, 0.1});
  CHECK(fig1.drive.detunings() == std::vector<double>{0.0, 20.0});
  CHECK(fig1.target_n == 2);
  CHECK(fig1.window == Window{10.0, 14.0});
  CHECK(fig1.snapshot_time == 14.0);
  CHECK(fig1.t_end == 15.0);

  CHECK(builtin("fig2a").drive.amplitudes() == std::vector<double>{0.1, 0.2});
  CHECK(builtin("fig2b").drive.amplitudes() == std::vector<double>{0.2, 0.1});
  CHECK(builtin("fig3a").drive.detunings() == std::vector<double>{0.0, 6.0});
  CHECK(builtin("fig3b").params.kerr_u == 5.0);

  const auto single = builtin("fig4_single");
  CHECK(single.drive.size() == 1);
  CHECK(single.drive.amplitudes()[0] == 1.2);
  CHECK(single.params.delta == -10.0);
  CHECK(single.params.dim == 20);
  const auto dbl = builtin("fig4_double");
  CHECK(dbl.drive.amplitudes() == std::vector<double>{0.5, 0.7});
  CHECK(dbl.params.dim == 20);

  const auto fig5 = builtin("fig5");
  CHECK(fig5.target_n == 3);
  CHECK(fig5.drive.detunings() == std::vector<double>{0.0, 20.0, 40.0});
  CHECK(builtin("fig6c").drive.amplitudes() == std::vector<double>{0.1, 0.2, 0.2});
  CHECK(builtin("fig7a").drive.detunings() == std::vector<double>{0.0, 6.0, 12.0});

  for (const auto& name : builtin_names()) {
    const auto s = builtin(name);
    CHECK_NOTHROW(validate(s));
    if (name != "fig4_single") CHECK(follows_resonant_ladder(s));
    CHECK(s.target_n == static_cast<int>(name == "fig4_single" ? 2 : s.drive.size()));
  }
  CHECK_FALSE(follows_resonant_ladder([] {
    auto s = builtin("fig1");
    s.drive = DriveSpec({{0.1, 0.0}, {0.1, 21.0}});
    return s;
  }()));
}

TEST_CASE("unknown scenario names list the catalog") {
  const auto e = error_of([] { builtin("fig9"); });
  CHECK(e.code() == Errc::unknown_scenario);
  const std::string msg = e.what();
  CHECK(contains(msg, "fig9"));
  for (const auto& name : builtin_names()) CHECK(contains(msg, name));
  CHECK(error_of([] { resolve_scenario("no_such_thing"); }).code() == Errc::unknown_scenario);
}

TEST_CASE("serialization round trip") {
  for (const auto& name : builtin_names()) {
    const auto s = builtin(name);
    const auto parsed = parse_scenario(serialize(s));
    CHECK(parsed.scenario == s);
    CHECK(parsed.notes.empty());
  }

  auto odd = builtin("fig6b");
  odd.params.kerr_u = 0.1 + 0.2;
  odd.options.abs_tol = 3.3e-13;
  odd.window = {7.25, 11.125};
  CHECK(parse_scenario(serialize(odd)).scenario == odd);

  const auto dir = std::filesystem::temp_directory_path() / "blockade_scenarios_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "fig5_copy.scn";
  save_scenario(builtin("fig5"), path);
  CHECK(load_scenario(path).scenario == builtin("fig5"));
  CHECK(resolve_scenario(path.string()).scenario == builtin("fig5"));
  std::filesystem::remove_all(dir);
  CHECK(error_of([&] { load_scenario(path); }).code() == Errc::io);
}

TEST_CASE("parsing fills and reports defaults") {
  const auto parsed = parse_scenario(kMinimal, "two.scn");
  const auto& s = parsed.scenario;
  CHECK(s.name == "two");
  CHECK(s.params.kerr_u == 10.0);
  CHECK(s.params.dim == 15);
  CHECK(s.drive == builtin("fig1").drive);
  CHECK(s.window == Window{10.0, 14.0});
  bool noted_dim = false;
  for (const auto& n : parsed.notes) noted_dim = noted_dim || contains(n, "dim = 15");
  CHECK(noted_dim);
  CHECK(parsed.notes.size() == 14);

  // Sectionless keys are accepted.
  const auto flat = parse_scenario("u = 3\ntone = 0.1, 0\ntone = 0.1, 6\ndim = 12\n").scenario;
  CHECK(flat.params.dim == 12);
  CHECK(flat.name == "scenario");
}

TEST_CASE("parse errors carry the source line") {
  auto err = error_of([] { parse_scenario("u = 10\ntone = 0.1, 0\ndim = banana\n", "x.scn"); });
  CHECK(err.code() == Errc::parse);
  CHECK(contains(err.what(), "x.scn:3"));

  err = error_of([] { parse_scenario("u = 10\n[drive]\ntone = 0.1\n", "y.scn"); });
  CHECK(contains(err.what(), "y.scn:3"));

  err = error_of([] { parse_scenario("u = 10\ncolour = 3\ntone = 0.1, 0\n"); });
  CHECK(contains(err.what(), "unknown key 'colour'"));

  err = error_of([] { parse_scenario("[drive]\nu = 10\ntone = 0.1, 0\n"); });
  CHECK(contains(err.what(), ":2"));

  err = error_of([] { parse_scenario("u = 10\nu = 11\ntone = 0.1, 0\n"); });
  CHECK(contains(err.what(), "duplicate"));

  err = error_of([] { parse_scenario("[physics]\nu = 10\n"); });
  CHECK(contains(err.what(), "unknown section"));

  err = error_of([] { parse_scenario("u = 10\n"); });
  CHECK(contains(err.what(), "tone"));

  err = error_of([] { parse_scenario("tone = 0.1, 0\n"); });
  CHECK(contains(err.what(), "'u'"));

  // Drive invariants: decreasing detunings are rejected.
  err = error_of([] { parse_scenario("u = 10\ntone = 0.1, 0\ntone = 0.1, 40\ntone = 0.1, 20\n"); });
  CHECK(err.code() == Errc::invalid_parameter);

  err = error_of([] { parse_scenario("u = 10\ntone = 0.1, 0\nwindow_start = 12\nwindow_end = 11\n"); });
  CHECK(err.code() == Errc::invalid_window);
  err = error_of([] { parse_scenario("u = 10\ntone = 0.1, 0\nt_end = 12\n"); });
  CHECK(err.code() == Errc::invalid_window);
}

TEST_CASE("overrides") {
  auto s = builtin("fig1");
  CHECK(apply_override(s, "dim", "18").empty());
  CHECK(s.params.dim == 18);
  apply_override(s, "eps1=0.25");
  CHECK(s.drive.amplitudes() == std::vector<double>{0.1, 0.25});
  apply_override(s, "window_end", "13.5");
  CHECK(s.window.end == 13.5);

  // Changing U keeps a ladder drive resonant.
  const auto notes = apply_override(s, "u", "5");
  CHECK(s.params.kerr_u == 5.0);
  CHECK(s.drive.detunings() == std::vector<double>{0.0, 10.0});
  REQUIRE(notes.size() == 1);
  CHECK(contains(notes[0], "re-derived"));

  // A drive that is off the ladder is left alone.
  apply_override(s, "det1", "11");
  CHECK(apply_override(s, "u", "7").empty());
  CHECK(s.drive.detunings() == std::vector<double>{0.0, 11.0});

  auto single = builtin("fig4_single");
  CHECK(apply_override(single, "u", "8").empty());
  CHECK(single.drive.detunings() == std::vector<double>{0.0});

  const auto before = builtin("fig5");
  auto t = before;
  CHECK(error_of([&] { apply_override(t, "eps7", "0.1"); }).code() == Errc::out_of_range);
  CHECK(error_of([&] { apply_override(t, "nonsense", "1"); }).code() == Errc::parse);
  CHECK(error_of([&] { apply_override(t, "tone", "0.1, 3"); }).code() == Errc::parse);
  CHECK(error_of([&] { apply_override(t, "dim", "x"); }).code() == Errc::parse);
  CHECK(error_of([&] { apply_override(t, "det1", "50"); }).code() == Errc::invalid_parameter);
  CHECK(error_of([&] { apply_override(t, "no_equals_sign"); }).code() == Errc::parse);
  CHECK(error_of([&] { apply_override(t, "window_start", "20"); }).code() == Errc::invalid_window);
  // Failed overrides leave the scenario untouched.
  CHECK(t == before);
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "blockade/error.hpp"
#include "blockade/observables.hpp"
#include "blockade/scenarios.hpp"

using namespace blockade;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::io;
}

DensityMatrix diagonal_state(const std::vector<double>& p) {
  RealVector d(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) d(static_cast<Eigen::Index>(i)) = p[i];
  return DensityMatrix(ComplexMatrix(d.cast<Complex>().asDiagonal()));
}

ObservableSeries run(const Scenario& s) {
  return compute_series(propagate(fock_density(0, s.params.dim), s.t_end, s.params, s.drive, s.options));
}

}  // namespace

TEST_CASE("photon distributions") {
  const auto rho = diagonal_state({0.5, 0.3, 0.2});
  CHECK(mean_photon(rho) == doctest::Approx(0.7));
  const auto p = photon_distribution(rho);
  CHECK(p == std::vector<double>{0.5, 0.3, 0.2});

  // Tiny negative round-off is clamped, real negativity is an error.
  CHECK(photon_distribution(diagonal_state({1.0 + 1e-10, -1e-10}))[1] == 0.0);
  CHECK(code_of([] { photon_distribution(diagonal_state({1.1, -0.1})); }) == Errc::positivity);
}

TEST_CASE("Poisson reference") {
  const auto q = poisson_distribution(1.0, 4);
  REQUIRE(q.size() == 5);
  CHECK(q[0] == doctest::Approx(std::exp(-1.0)));
  CHECK(q[1] == doctest::Approx(std::exp(-1.0)));
  CHECK(q[2] == doctest::Approx(std::exp(-1.0) / 2));
  CHECK(q[4] == doctest::Approx(std::exp(-1.0) / 24));
  CHECK(poisson_distribution(0.0, 3) == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK(code_of([] { poisson_distribution(-0.1, 3); }) == Errc::invalid_parameter);
}

TEST_CASE("correlation functions from distributions") {
  // |2>: <a^dag^2 a^2> = 2, <n> = 2, g2 = 1/2; g3 vanishes.
  const std::vector<double> two{0.0, 0.0, 1.0};
  CHECK(g_from_distribution(two, 2).value() == doctest::Approx(0.5));
  CHECK(g_from_distribution(two, 3).value() == 0.0);

  // Fock |n>: g2 = 1 - 1/n.
  for (int n = 1; n < 8; ++n) {
    std::vector<double> p(10, 0.0);
    p[static_cast<std::size_t>(n)] = 1.0;
    CHECK(g_from_distribution(p, 2).value() == doctest::Approx(1.0 - 1.0 / n));
  }

  // Thermal: g(n) = n!.
  const double nbar = 0.05;
  std::vector<double> thermal;
  for (int n = 0; n < 60; ++n) thermal.push_back(std::pow(nbar, n) / std::pow(1 + nbar, n + 1));
  CHECK(g_from_distribution(thermal, 2).value() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g_from_distribution(thermal, 3).value() == doctest::Approx(6.0).epsilon(1e-9));

  const auto q = poisson_distribution(0.7, 40);
  for (int order = 2; order <= 5; ++order) {
    CHECK(g_from_distribution(q, order).value() == doctest::Approx(1.0).epsilon(1e-10));
  }

  CHECK_FALSE(g_from_distribution(std::vector<double>{1.0, 0.0}, 2).has_value());
  CHECK(code_of([&] { g_from_distribution(two, 1); }) == Errc::invalid_order);
  CHECK(code_of([&] { g_n(fock_density(1, 3), 0); }) == Errc::invalid_order);
}

TEST_CASE("window averages") {
  std::vector<double> t, c, s;
  for (int k = 0; k <= 400; ++k) {
    t.push_back(0.05 * k);
    c.push_back(3.0);
    s.push_back(std::sin(std::numbers::pi * t.back()));
  }
  CHECK(window_average(t, c, {2.0, 7.0}) == doctest::Approx(3.0));
  CHECK(window_average(t, c, {2.01, 6.97}) == doctest::Approx(3.0));
  CHECK(std::abs(window_average(t, s, {2.0, 6.0})) < 1e-12);
  // sin(pi t) is odd about t = 1.
  CHECK(std::abs(window_average(t, s, {0.5, 1.5})) < 1e-12);
  // mean of sin over [0, 1] is 2/pi, second order in dt.
  CHECK(window_average(t, s, {0.0, 1.0}) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-3));

  // Linear data is integrated exactly, including interpolated edges.
  std::vector<double> lin;
  for (double x : t) lin.push_back(2.0 * x + 1.0);
  CHECK(window_average(t, lin, {1.013, 3.377}) == doctest::Approx(2.0 * (1.013 + 3.377) / 2 + 1.0));

  CHECK(code_of([&] { window_average(t, c, {5.0, 5.0}); }) == Errc::invalid_window);
  CHECK(code_of([&] { window_average(t, c, {6.0, 4.0}); }) == Errc::invalid_window);
  CHECK(code_of([&] { window_average(t, c, {15.0, 25.0}); }) == Errc::invalid_window);
  std::vector<double> shorter(c.begin(), c.end() - 1);
  CHECK(code_of([&] { window_average(t, shorter, {1.0, 2.0}); }) == Errc::dimension_mismatch);
}

TEST_CASE("sample lookup and periodicity") {
  std::vector<double> t, v;
  for (int k = 0; k <= 200; ++k) {
    t.push_back(0.1 * k);
    v.push_back(std::cos(2.0 * std::numbers::pi * t.back() / 2.0));
  }
  CHECK(sample_index(t, 14.0) == 140);
  CHECK(code_of([&] { sample_index(t, 14.05); }) == Errc::out_of_range);
  CHECK(periodicity_deviation(t, v, 2.0, {10.0, 20.0}) < 1e-12);
  CHECK(periodicity_deviation(t, v, 1.0, {10.0, 20.0}) == doctest::Approx(2.0));
  CHECK(code_of([&] { periodicity_deviation(t, v, 0.25, {10.0, 20.0}); }) == Errc::invalid_window);
  CHECK(code_of([&] { periodicity_deviation(t, v, 20.0, {10.0, 20.0}); }) == Errc::invalid_window);
}

TEST_CASE("series layout") {
  auto s = builtin("fig1");
  s.t_end = 1.0;
  const auto series = run(s);
  CHECK(series.times.size() == 101);
  CHECK(series.n_max == 5);
  CHECK(series.p_n.front().size() == 6);
  CHECK(series.g.size() == 4);
  // Vacuum at t = 0: g undefined, exported as NaN.
  CHECK_FALSE(series.g.at(2).front().has_value());
  CHECK(std::isnan(column(series, Quantity::g(2)).front()));
  CHECK(column(series, Quantity::population(0)).front() == 1.0);
  CHECK(column(series, Quantity::poisson(0)).front() == 1.0);
  CHECK(code_of([&] { column(series, Quantity::population(9)); }) == Errc::out_of_range);
  CHECK(code_of([&] { column(series, Quantity::g(7)); }) == Errc::invalid_order);
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    CHECK(series.poisson_n[i][1] == doctest::Approx(series.mean_n[i] * std::exp(-series.mean_n[i])));
  }
}

TEST_CASE("criteria on the two-photon scenario") {
  const auto s = builtin("fig1");
  const auto series = run(s);
  const auto r = evaluate_criteria(series, 2, s.window, s.snapshot_time, envelope_period(s.drive));
  CHECK(r.g_pass);
  CHECK(r.p_pass);
  CHECK(r.g_verdict.at(2) == Verdict::approx);
  CHECK(r.g_average.at(3) < 1.0);
  CHECK(r.averaging_end == doctest::Approx(10.0 + 12 * std::numbers::pi / 10.0));
  CHECK(r.p_ratio.at(3) < 0.5);
  CHECK(format_report(r).find("g criterion: PASS") != std::string::npos);

  // Same data does not qualify as three-photon blockade.
  const auto r3 = evaluate_criteria(series, 3, s.window, s.snapshot_time, envelope_period(s.drive));
  CHECK_FALSE(r3.g_pass);
  CHECK_FALSE(r3.p_pass);

  CHECK(code_of([&] { evaluate_criteria(series, 2, {2.0, 6.0}, 14.0, std::nullopt); }) == Errc::invalid_window);
  CHECK(code_of([&] { evaluate_criteria(series, 9, s.window, 14.0, std::nullopt); }) == Errc::invalid_order);
  CHECK(code_of([&] { evaluate_criteria(series, 2, {10.0, 10.2}, 14.0, envelope_period(s.drive)); }) ==
        Errc::invalid_window);
}

TEST_CASE("criteria on the antibunched and three-photon scenarios") {
  const auto b = builtin("fig2b");
  const auto rb = evaluate_criteria(run(b), 2, b.window, b.snapshot_time, envelope_period(b.drive));
  CHECK_FALSE(rb.g_pass);
  for (const auto& [order, avg] : rb.g_average) CHECK(avg < 1.0);
  CHECK(rb.p_ratio.at(2) < 1.0);

  const auto f = builtin("fig5");
  const auto rf = evaluate_criteria(run(f), 3, f.window, f.snapshot_time, envelope_period(f.drive));
  CHECK(rf.g_pass);
  CHECK(rf.p_pass);
  CHECK(rf.g_average.at(4) < 1.0);
  CHECK(rf.g_average.at(5) < 1.0);
}

TEST_CASE("verdict symbols") {
  CHECK(to_symbol(Verdict::above) == ">");
  CHECK(to_symbol(Verdict::below) == "<");
  CHECK(to_symbol(Verdict::approx) != to_symbol(Verdict::below));
}

#pragma once

// Photon statistics of sampled states and the two multiphoton-blockade
// criteria (correlation functions and comparison with Poisson statistics).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blockade/fock.hpp"
#include "blockade/lindblad.hpp"

namespace blockade {

double mean_photon(const DensityMatrix& rho);

/// Diagonal of rho clamped to [0, 1]. Throws positivity if any population
/// is below -1e-8.
std::vector<double> photon_distribution(const DensityMatrix& rho);

/// nbar^n exp(-nbar) / n! for n = 0..n_max.
std::vector<double> poisson_distribution(double nbar, std::size_t n_max);

/// Equal-time g^(n) = <a^dag^n a^n> / <a^dag a>^n from a photon-number
/// distribution via factorial moments. Empty when <n> < 1e-12.
std::optional<double> g_from_distribution(std::span<const double> p, int order);
std::optional<double> g_n(const DensityMatrix& rho, int order);

struct Window {
  double start = 10.0;
  double end = 14.0;

  bool operator==(const Window&) const = default;
};

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> mean_n;
  std::vector<std::vector<double>> p_n;        // [sample][n], n = 0..n_max
  std::vector<std::vector<double>> poisson_n;  // same layout
  std::map<int, std::vector<std::optional<double>>> g;
  std::size_t n_max = 0;
};

ObservableSeries compute_series(const Trajectory& traj, std::size_t n_max = 5, int max_order = 5);

/// Selects one scalar column of an ObservableSeries.
struct Quantity {
  enum class Kind { mean_n, population, poisson, correlation };
  Kind kind = Kind::mean_n;
  int index = 0;

  static Quantity mean() { return {Kind::mean_n, 0}; }
  static Quantity population(int n) { return {Kind::population, n}; }
  static Quantity poisson(int n) { return {Kind::poisson, n}; }
  static Quantity g(int order) { return {Kind::correlation, order}; }
};

/// Column as doubles; undefined g values become NaN.
std::vector<double> column(const ObservableSeries& series, Quantity q);

/// Trapezoidal time average of samples over [window.start, window.end];
/// window edges between samples are linearly interpolated.
double window_average(std::span<const double> times, std::span<const double> values, Window window);
double window_average(const ObservableSeries& series, Quantity q, Window window);

/// Value at the sample closest to t (within 1e-9). Throws out_of_range.
std::size_t sample_index(std::span<const double> times, double t);

/// max |x(t + period) - x(t)| / max |x| over samples with t, t + period in
/// the window. The sample grid must contain the shifted times.
double periodicity_deviation(std::span<const double> times, std::span<const double> values,
                             double period, Window window);

enum class Verdict { above, approx, below };
std::string_view to_symbol(Verdict v);

struct CriteriaConfig {
  double near_band = 0.15;
  int max_order = 5;
  double min_window_start = 5.0;
};

struct CriteriaReport {
  int target = 2;
  Window window;
  double averaging_end = 0.0;  // window.start + whole envelope periods
  double snapshot_time = 14.0;
  double near_band = 0.15;

  std::map<int, double> g_average;
  std::map<int, double> g_window_max;
  std::map<int, Verdict> g_verdict;
  bool g_pass = false;

  std::map<int, double> p_ratio;  // P_m / Poisson_m at snapshot_time
  std::map<int, Verdict> p_verdict;
  bool p_pass = false;
};

/// g-criterion: g^(target) >= 1 and g^(m) < 1 for target < m <= max_order,
/// on averages over whole envelope periods. P-criterion: P_target >= Q_target
/// and P_m < Q_m for m > target, at snapshot_time. Values within near_band of
/// 1 count as satisfying ">=".
CriteriaReport evaluate_criteria(const ObservableSeries& series, int target, Window window,
                                 double snapshot_time, std::optional<double> envelope_period,
                                 const CriteriaConfig& config = {});

std::string format_report(const CriteriaReport& report);

}  // namespace blockade

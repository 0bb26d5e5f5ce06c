#include "blockade/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blockade/error.hpp"

namespace blockade {

namespace {

constexpr double kUndefinedMean = 1e-12;
constexpr double kTimeMatch = 1e-9;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

Verdict classify(double value, double band) {
  if (std::abs(value - 1.0) <= band) return Verdict::approx;
  return value > 1.0 ? Verdict::above : Verdict::below;
}

}  // namespace

double mean_photon(const DensityMatrix& rho) {
  double n = 0.0;
  for (std::size_t k = 0; k < rho.dim(); ++k) n += static_cast<double>(k) * rho(k, k).real();
  return n;
}

std::vector<double> photon_distribution(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    const double v = rho(k, k).real();
    if (v < -1e-8) {
      throw Error(Errc::positivity,
                  "population P" + std::to_string(k) + " = " + std::to_string(v) + " is negative");
    }
    p[k] = std::clamp(v, 0.0, 1.0);
  }
  return p;
}

std::vector<double> poisson_distribution(double nbar, std::size_t n_max) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw Error(Errc::invalid_parameter, "Poisson mean must be non-negative");
  }
  std::vector<double> q(n_max + 1);
  q[0] = std::exp(-nbar);
  for (std::size_t n = 1; n <= n_max; ++n) q[n] = q[n - 1] * nbar / static_cast<double>(n);
  return q;
}

std::optional<double> g_from_distribution(std::span<const double> p, int order) {
  if (order < 2) throw Error(Errc::invalid_order, "correlation order must be >= 2");
  double mean = 0.0;
  double moment = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    mean += static_cast<double>(m) * p[m];
    if (m >= static_cast<std::size_t>(order)) {
      double falling = 1.0;
      for (int j = 0; j < order; ++j) falling *= static_cast<double>(m) - j;
      moment += falling * p[m];
    }
  }
  if (mean < kUndefinedMean) return std::nullopt;
  return moment / std::pow(mean, order);
}

std::optional<double> g_n(const DensityMatrix& rho, int order) {
  const auto p = photon_distribution(rho);
  return g_from_distribution(p, order);
}

ObservableSeries compute_series(const Trajectory& traj, std::size_t n_max, int max_order) {
  ObservableSeries s;
  s.n_max = n_max;
  s.times = traj.times;
  const std::size_t count = traj.states.size();
  s.mean_n.reserve(count);
  s.p_n.reserve(count);
  s.poisson_n.reserve(count);
  for (int order = 2; order <= max_order; ++order) s.g[order].reserve(count);

  for (const auto& rho : traj.states) {
    const auto p = photon_distribution(rho);
    double mean = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) mean += static_cast<double>(k) * p[k];
    s.mean_n.push_back(mean);

    std::vector<double> row(n_max + 1, 0.0);
    std::copy_n(p.begin(), std::min(p.size(), n_max + 1), row.begin());
    s.p_n.push_back(std::move(row));
    s.poisson_n.push_back(poisson_distribution(mean, n_max));
    for (int order = 2; order <= max_order; ++order) {
      s.g[order].push_back(g_from_distribution(p, order));
    }
  }
  return s;
}

std::vector<double> column(const ObservableSeries& series, Quantity q) {
  const std::size_t count = series.times.size();
  std::vector<double> out(count);
  auto check_level = [&](int n) {
    if (n < 0 || static_cast<std::size_t>(n) > series.n_max) {
      throw Error(Errc::out_of_range, "photon number " + std::to_string(n) + " not in series");
    }
  };
  switch (q.kind) {
    case Quantity::Kind::mean_n:
      out = series.mean_n;
      break;
    case Quantity::Kind::population:
      check_level(q.index);
      for (std::size_t i = 0; i < count; ++i) out[i] = series.p_n[i][static_cast<std::size_t>(q.index)];
      break;
    case Quantity::Kind::poisson:
      check_level(q.index);
      for (std::size_t i = 0; i < count; ++i) out[i] = series.poisson_n[i][static_cast<std::size_t>(q.index)];
      break;
    case Quantity::Kind::correlation: {
      const auto it = series.g.find(q.index);
      if (it == series.g.end()) {
        throw Error(Errc::invalid_order, "g(" + std::to_string(q.index) + ") not in series");
      }
      for (std::size_t i = 0; i < count; ++i) out[i] = it->second[i].value_or(nan());
      break;
    }
  }
  return out;
}

double window_average(std::span<const double> times, std::span<const double> values, Window window) {
  if (times.size() != values.size()) {
    throw Error(Errc::dimension_mismatch, "times and values differ in length");
  }
  if (!(window.end > window.start) || times.empty() || window.start < times.front() - kTimeMatch ||
      window.end > times.back() + kTimeMatch) {
    throw Error(Errc::invalid_window, "empty window or window outside the sampled range");
  }
  auto value_at = [&](double t) {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return values.front();
    if (it == times.end()) return values.back();
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
    return (1.0 - w) * values[j - 1] + w * values[j];
  };

  const double lo = std::max(window.start, times.front());
  const double hi = std::min(window.end, times.back());
  double prev_t = lo;
  double prev_v = value_at(lo);
  double integral = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= lo) continue;
    if (times[i] >= hi) break;
    integral += 0.5 * (prev_v + values[i]) * (times[i] - prev_t);
    prev_t = times[i];
    prev_v = values[i];
  }
  integral += 0.5 * (prev_v + value_at(hi)) * (hi - prev_t);
  const double avg = integral / (hi - lo);
  if (std::isnan(avg)) throw Error(Errc::invalid_window, "undefined values inside the window");
  return avg;
}

double window_average(const ObservableSeries& series, Quantity q, Window window) {
  const auto values = column(series, q);
  return window_average(series.times, values, window);
}

std::size_t sample_index(std::span<const double> times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t - kTimeMatch);
  if (it == times.end() || std::abs(*it - t) > kTimeMatch) {
    throw Error(Errc::out_of_range, "no sample at t=" + std::to_string(t));
  }
  return static_cast<std::size_t>(it - times.begin());
}

double periodicity_deviation(std::span<const double> times, std::span<const double> values,
                             double period, Window window) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw Error(Errc::invalid_window, "periodicity check needs a sampled series");
  }
  if (window.end - window.start < period) {
    throw Error(Errc::invalid_window, "window shorter than one period");
  }
  double deviation = 0.0;
  double scale = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.start - kTimeMatch || times[i] > window.end + kTimeMatch) continue;
    scale = std::max(scale, std::abs(values[i]));
    const double shifted = times[i] + period;
    if (shifted > window.end + kTimeMatch) continue;
    const auto it = std::lower_bound(times.begin() + static_cast<std::ptrdiff_t>(i), times.end(),
                                     shifted - 1e-7);
    if (it == times.end() || std::abs(*it - shifted) > 1e-7) {
      throw Error(Errc::invalid_window, "sample grid does not contain t + period");
    }
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    deviation = std::max(deviation, std::abs(values[j] - values[i]));
    ++pairs;
  }
  if (pairs == 0 || scale == 0.0) throw Error(Errc::invalid_window, "no samples to compare");
  return deviation / scale;
}

std::string_view to_symbol(Verdict v) {
  switch (v) {
    case Verdict::above: return ">";
    case Verdict::approx: return "≈";
    case Verdict::below: return "<";
  }
  return "?";
}

CriteriaReport evaluate_criteria(const ObservableSeries& series, int target, Window window,
                                 double snapshot_time, std::optional<double> envelope_period,
                                 const CriteriaConfig& config) {
  if (target < 1 || target > config.max_order) {
    throw Error(Errc::invalid_order, "target blockade order out of range");
  }
  if (window.start < config.min_window_start) {
    throw Error(Errc::invalid_window, "window must start in the stationary regime (t >= " +
                                          std::to_string(config.min_window_start) + ")");
  }
  if (static_cast<std::size_t>(config.max_order) > series.n_max) {
    throw Error(Errc::invalid_order, "series does not hold populations up to max_order");
  }

  CriteriaReport r;
  r.target = target;
  r.window = window;
  r.snapshot_time = snapshot_time;
  r.near_band = config.near_band;

  const double length = window.end - window.start;
  r.averaging_end = window.end;
  if (envelope_period) {
    if (length < *envelope_period) {
      throw Error(Errc::invalid_window, "window shorter than one envelope period");
    }
    const double periods = std::floor(length / *envelope_period + 1e-9);
    r.averaging_end = window.start + periods * *envelope_period;
  }
  const Window avg_window{window.start, r.averaging_end};

  r.g_pass = true;
  for (int order = 2; order <= config.max_order; ++order) {
    const auto values = column(series, Quantity::g(order));
    const double avg = window_average(series.times, values, avg_window);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < series.times.size(); ++i) {
      if (series.times[i] >= window.start - kTimeMatch && series.times[i] <= window.end + kTimeMatch) {
        peak = std::max(peak, values[i]);
      }
    }
    r.g_average[order] = avg;
    r.g_window_max[order] = peak;
    r.g_verdict[order] = classify(avg, config.near_band);
    if (order == target) r.g_pass = r.g_pass && r.g_verdict[order] != Verdict::below;
    if (order > target) r.g_pass = r.g_pass && avg < 1.0;
  }
  // g^(1) is identically 1; a one-photon target only constrains higher orders.

  const std::size_t snap = sample_index(series.times, snapshot_time);
  r.p_pass = true;
  for (int m = 1; m <= config.max_order; ++m) {
    const double q = series.poisson_n[snap][static_cast<std::size_t>(m)];
    const double ratio = q > 0.0 ? series.p_n[snap][static_cast<std::size_t>(m)] / q : nan();
    r.p_ratio[m] = ratio;
    r.p_verdict[m] = classify(ratio, config.near_band);
    if (m == target) r.p_pass = r.p_pass && std::isfinite(ratio) && r.p_verdict[m] != Verdict::below;
    if (m > target) r.p_pass = r.p_pass && std::isfinite(ratio) && ratio < 1.0;
  }
  return r;
}

std::string format_report(const CriteriaReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "target: " << r.target << "PB\n";
  os << "window: [" << r.window.start << ", " << r.window.end << "], averaged over ["
     << r.window.start << ", " << r.averaging_end << "]\n";
  os << "near-equality band: +/-" << r.near_band << " (implementation choice)\n";
  for (const auto& [order, avg] : r.g_average) {
    os << "  mean g" << order << " = " << avg << "  (" << to_symbol(r.g_verdict.at(order))
       << " 1, window max " << r.g_window_max.at(order) << ")\n";
  }
  os << "g criterion: " << (r.g_pass ? "PASS" : "FAIL") << "\n";
  os << "snapshot t = " << r.snapshot_time << "\n";
  for (const auto& [m, ratio] : r.p_ratio) {
    os << "  P" << m << "/Q" << m << " = " << ratio << "  (" << to_symbol(r.p_verdict.at(m))
       << " 1)\n";
  }
  os << "P criterion: " << (r.p_pass ? "PASS" : "FAIL") << "\n";
  os << "blockade " << r.target << "PB: " << (r.g_pass && r.p_pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace blockade

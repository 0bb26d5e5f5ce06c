#include "blockade/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "blockade/error.hpp"

namespace blockade {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_series_csv(std::ostream& os, const ObservableSeries& series) {
  os << "t,mean_n";
  for (std::size_t n = 0; n <= series.n_max; ++n) os << ",P" << n;
  for (std::size_t n = 0; n <= series.n_max; ++n) os << ",Q" << n;
  for (const auto& [order, unused] : series.g) os << ",g" << order;
  os << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    os << format_number(series.times[i]) << ',' << format_number(series.mean_n[i]);
    for (double p : series.p_n[i]) os << ',' << format_number(p);
    for (double q : series.poisson_n[i]) os << ',' << format_number(q);
    for (const auto& [order, values] : series.g) {
      os << ',' << (values[i] ? format_number(*values[i]) : std::string("nan"));
    }
    os << '\n';
  }
}

void write_envelope_csv(std::ostream& os, const ObservableSeries& series, const DriveSpec& drive) {
  os << "t,abs_eps_sq\n";
  for (double t : series.times) {
    os << format_number(t) << ',' << format_number(std::norm(drive_amplitude(t, drive))) << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series) {
  auto out = open_for_write(path);
  write_series_csv(out, series);
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

void write_envelope_csv(const std::filesystem::path& path, const ObservableSeries& series,
                        const DriveSpec& drive) {
  auto out = open_for_write(path);
  write_envelope_csv(out, series, drive);
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

}  // namespace blockade

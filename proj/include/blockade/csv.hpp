#pragma once

// CSV writers: header row, comma separated, '.' decimal point, 12
// significant digits, LF line endings. Undefined values are written as "nan".

#include <filesystem>
#include <ostream>
#include <string>

#include "blockade/model.hpp"
#include "blockade/observables.hpp"

namespace blockade {

std::string format_number(double v);

void write_series_csv(std::ostream& os, const ObservableSeries& series);
void write_envelope_csv(std::ostream& os, const ObservableSeries& series, const DriveSpec& drive);

void write_series_csv(const std::filesystem::path& path, const ObservableSeries& series);
void write_envelope_csv(const std::filesystem::path& path, const ObservableSeries& series,
                        const DriveSpec& drive);

}  // namespace blockade

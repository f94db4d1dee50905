#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ptqfi/scan.hpp"

namespace ptqfi {

/// 17 significant digits, '.' decimal separator.
std::string format_number(double x);

/// Header "<axis>,<quantity>", LF line endings.
void write_csv(std::ostream& os, const TimeSeries& series);

/// Several series sharing one grid: "<axis>,<label 1>,<label 2>,...".
void write_combined_csv(std::ostream& os, const std::vector<const TimeSeries*>& series);

struct WrittenFiles {
    std::filesystem::path csv;
    std::filesystem::path meta;
};

/// Writes <dir>/<series.label>.csv and the JSON sidecar
/// <dir>/<series.label>.json. Creates dir if needed.
WrittenFiles write_series(const std::filesystem::path& dir, const TimeSeries& series);

/// gnuplot script plotting the given CSV files against their first column.
std::filesystem::path write_gnuplot_script(const std::filesystem::path& dir,
                                           const std::string& name,
                                           const std::vector<WrittenFiles>& files,
                                           const std::string& ylabel);

}  // namespace ptqfi

#pragma once

// CSV time histories of a MotionPlan.
//
// Layout (format version 1):
//   line 1   "# silsrob-timehistory v1"
//   line 2   header
//   line 3.. one row per plan sample
// Every value is written in fixed notation with 9 decimals.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "silsrob/trajectory.hpp"

namespace silsrob {

inline constexpr std::string_view kTimeHistoryVersionLine = "# silsrob-timehistory v1";

/// Full table, or the column subsets behind the platform reorientation
/// plot (fig5) and the spherical-module joint plot (fig7).
enum class PlotData { Full, Fig5, Fig7 };

std::optional<PlotData> parse_plot_data(std::string_view name);

std::string format_value(double v);

std::vector<std::string> csv_header(const MotionPlan& plan, PlotData columns = PlotData::Full,
                                    bool with_endoscope = false);

void write_csv(std::ostream& out, const MotionPlan& plan, PlotData columns = PlotData::Full,
               std::optional<double> endoscope_insertion = std::nullopt);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
};

/// Reads a file written by write_csv. Throws std::runtime_error on malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace silsrob

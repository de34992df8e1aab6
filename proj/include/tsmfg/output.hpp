#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsmfg/solvers.hpp"

namespace tsmfg {

/// Shortest decimal that reads back to the same double.
std::string format_shortest(double value);
/// Snapshot header label "t=<value>" with six decimals.
std::string time_label(double t);

/// Header `x,t=<t1>,...` in ascending time, one row per node. ASCII, '\n'.
std::string csv_text(const SolutionTrace& trace);
void emit_csv(const SolutionTrace& trace, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;
};

/// Parses a file written by emit_csv. Throws std::runtime_error when malformed.
CsvTable read_csv(const std::filesystem::path& path);

struct PlotOptions {
  /// Headers to draw; "t=0" style names match the nearest snapshot label.
  /// Empty selects every snapshot column.
  std::vector<std::string> columns;
  std::string title;
};

std::string svg_text(const CsvTable& table, const PlotOptions& options);
void emit_svg_plot(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                   const PlotOptions& options);

/// Writes through <path>.tmp and renames.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace tsmfg

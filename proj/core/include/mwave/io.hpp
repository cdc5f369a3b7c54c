#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mwave/grid2d.hpp"

namespace mwave {

// Fixed scientific notation with 9 significant digits; the CSV contract for
// golden-file comparisons.
std::string format_sci(double value);

// All writers go to "<path>.tmp" first and rename on success, so a failed run
// never leaves a half-written output.
void write_text_atomic(const std::string& path, const std::string& content);

// Matrix CSV: one row per j (y), columns i (x).
void write_csv_matrix(const std::string& path, const Grid2D& grid);

// Binary 8-bit PGM, linearly mapped with the peak at 255, row ny-1 first so
// +y points up in image viewers. Visualization only; CSV is the contract.
void write_pgm(const std::string& path, const Grid2D& grid);

void write_pairs_csv(const std::string& path, const std::vector<std::pair<double, double>>& rows,
                     const std::string& header, const std::string& trailing_comment = "");

// time_s column followed by one column per series (all series share dt and
// sample k sits at t = (k+1)*dt).
void write_series_csv(const std::string& path, double dt,
                      const std::vector<const std::vector<double>*>& series,
                      const std::vector<std::string>& names);

// Two numeric columns; '#' comments and a non-numeric header line are skipped.
std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path);

}  // namespace mwave

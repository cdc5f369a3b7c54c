#pragma once

#include <utility>
#include <vector>

#include "mwave/fdtd.hpp"
#include "mwave/grid2d.hpp"
#include "mwave/materials.hpp"
#include "mwave/radar.hpp"

namespace mwave {

// Specific absorption rate sigma * |E_rms|^2 / rho, W/kg.
struct SarMap {
  Grid2D values;
  double dx = 0.0;
  double freq = 0.0;
};

SarMap sar_map(const Grid2D& e_rms, const Grid2D& sigma, const Grid2D& rho, double dx = 0.0,
               double freq = 0.0);

struct NarrowbandOptions {
  double amplitude = 1.0;
  int ramp_periods = 5;     // raised-cosine turn-on
  int measure_periods = 3;  // rms window at the end of the run
};

// Drives one cell with a ramped sinusoid until periodic steady state (ramp,
// then a round trip across the grid to settle, then the measure window) and
// returns the rms Ez per cell over the final measure window.
Grid2D narrowband_e_rms(const MaterialGrid& raster, const GridSpec& grid,
                        const SolverOptions& solver, CellIndex source, double freq_hz,
                        const NarrowbandOptions& options = {});

// Differential-SAR frequency selection over a scenario's phantom pair (with
// and without tumor), driven from the first array element:
// D(f) = max over cells |SAR_with(f) - SAR_without(f)|.
std::vector<std::pair<double, double>> differential_sar_curve(
    const Scenario& scenario, const TissueCatalog& catalog, const std::vector<double>& freqs_hz,
    const NarrowbandOptions& options = {});

// argmax_f D(f); ties go to the lowest frequency.
double best_frequency_from_curve(const std::vector<std::pair<double, double>>& curve);
double best_frequency(const Scenario& scenario, const TissueCatalog& catalog,
                      const std::vector<double>& freqs_hz, const NarrowbandOptions& options = {});

}  // namespace mwave

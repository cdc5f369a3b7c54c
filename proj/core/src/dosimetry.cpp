#include "mwave/dosimetry.hpp"

#include <algorithm>
#include <cmath>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"
#include "mwave/phantom.hpp"

namespace mwave {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SarMap sar_map(const Grid2D& e_rms, const Grid2D& sigma, const Grid2D& rho, double dx,
               double freq) {
  if (e_rms.nx() != sigma.nx() || e_rms.ny() != sigma.ny() || e_rms.nx() != rho.nx() ||
      e_rms.ny() != rho.ny())
    throw InvariantViolation("sar_map: grid shapes differ");

  SarMap out;
  out.dx = dx;
  out.freq = freq;
  out.values = Grid2D(e_rms.nx(), e_rms.ny());
  for (int j = 0; j < e_rms.ny(); ++j)
    for (int i = 0; i < e_rms.nx(); ++i) {
      if (!(rho(i, j) > 0.0)) throw InvariantViolation("sar_map: rho must be > 0 everywhere");
      out.values(i, j) = sigma(i, j) * e_rms(i, j) * e_rms(i, j) / rho(i, j);
    }
  return out;
}

Grid2D narrowband_e_rms(const MaterialGrid& raster, const GridSpec& grid,
                        const SolverOptions& solver, CellIndex source, double freq_hz,
                        const NarrowbandOptions& options) {
  if (!(freq_hz > 0.0)) throw InvariantViolation("narrowband_e_rms: frequency must be > 0");
  validate_resolution(grid, freq_hz, raster.max_eps_r());

  const double period = 1.0 / freq_hz;
  const double ramp = options.ramp_periods * period;
  const double settle =
      2.0 * std::hypot(grid.width(), grid.height()) * std::sqrt(raster.max_eps_r()) /
      constants::c0;
  const long n_meas = std::lround(options.measure_periods * period / grid.dt);
  const long n_total =
      static_cast<long>(std::ceil((ramp + settle) / grid.dt)) + n_meas;

  const double amplitude = options.amplitude;
  Simulation sim(raster, grid, solver);
  sim.add_source(SourceTerm{source,
                            [amplitude, ramp, freq_hz](double t) {
                              const double env =
                                  t < ramp ? 0.5 * (1.0 - std::cos(kPi * t / ramp)) : 1.0;
                              return amplitude * env * std::sin(2.0 * kPi * freq_hz * t);
                            },
                            0.0});

  Grid2D acc(grid.nx, grid.ny);
  for (long k = 0; k < n_total; ++k) {
    sim.step();
    if (k >= n_total - n_meas) {
      const Grid2D& ez = sim.ez();
      double* a = acc.data();
      const double* e = ez.data();
      for (size_t c = 0; c < acc.size(); ++c) a[c] += e[c] * e[c];
    }
  }
  double* a = acc.data();
  for (size_t c = 0; c < acc.size(); ++c) a[c] = std::sqrt(a[c] / double(n_meas));
  return acc;
}

std::vector<std::pair<double, double>> differential_sar_curve(
    const Scenario& scenario, const TissueCatalog& catalog, const std::vector<double>& freqs_hz,
    const NarrowbandOptions& options) {
  if (freqs_hz.empty()) throw InvariantViolation("differential_sar_curve: no frequencies");

  RealizedScenario r = realize(scenario, catalog);
  const Phantom no_tumor = build_phantom(r.phantom.spec().without_tumor());
  const int margin_cells = r.solver.pml_cells + 2;
  const MaterialGrid raster_with = rasterize(r.phantom, r.grid, catalog, margin_cells);
  const MaterialGrid raster_without = rasterize(no_tumor, r.grid, catalog, margin_cells);
  const CellIndex source = r.array.cells(r.grid).front();

  std::vector<std::pair<double, double>> curve;
  curve.reserve(freqs_hz.size());
  for (double f : freqs_hz) {
    const Grid2D e_with = narrowband_e_rms(raster_with, r.grid, r.solver, source, f, options);
    const Grid2D e_without =
        narrowband_e_rms(raster_without, r.grid, r.solver, source, f, options);
    const SarMap sar_with = sar_map(e_with, raster_with.sigma, raster_with.rho, r.grid.dx, f);
    const SarMap sar_without =
        sar_map(e_without, raster_without.sigma, raster_without.rho, r.grid.dx, f);

    double diff = 0.0;
    for (int j = 0; j < r.grid.ny; ++j)
      for (int i = 0; i < r.grid.nx; ++i)
        diff = std::max(diff, std::fabs(sar_with.values(i, j) - sar_without.values(i, j)));
    curve.emplace_back(f, diff);
  }
  return curve;
}

double best_frequency_from_curve(const std::vector<std::pair<double, double>>& curve) {
  if (curve.empty()) throw InvariantViolation("best_frequency: empty curve");
  std::vector<std::pair<double, double>> sorted = curve;
  std::sort(sorted.begin(), sorted.end());  // ascending frequency, so ties pick the lowest
  size_t best = 0;
  for (size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k].second > sorted[best].second) best = k;
  return sorted[best].first;
}

double best_frequency(const Scenario& scenario, const TissueCatalog& catalog,
                      const std::vector<double>& freqs_hz, const NarrowbandOptions& options) {
  return best_frequency_from_curve(differential_sar_curve(scenario, catalog, freqs_hz, options));
}

}  // namespace mwave

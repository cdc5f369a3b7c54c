#pragma once

#include <utility>
#include <vector>

#include "mwave/fdtd.hpp"
#include "mwave/grid2d.hpp"
#include "mwave/materials.hpp"
#include "mwave/phantom.hpp"
#include "mwave/pulse.hpp"

namespace mwave {

enum class DatasetKind { with_tumor, calibration, tumor_response };

// Multistatic time-domain record: every element transmits in turn, all
// elements receive.
struct RadarDataset {
  int n_elements = 0;
  double dt = 0.0;
  ArrayGeometry array;
  PulseSpec pulse;
  std::vector<std::vector<double>> traces;  // indexed [tx * n_elements + rx]
  std::vector<double> tx_waveform;
  DatasetKind kind = DatasetKind::with_tumor;

  std::vector<double>& trace(int tx, int rx) { return traces[size_t(tx) * n_elements + rx]; }
  const std::vector<double>& trace(int tx, int rx) const {
    return traces[size_t(tx) * n_elements + rx];
  }
  long n_samples() const { return traces.empty() ? 0 : long(traces.front().size()); }
};

// One acquisition scene: phantom + arc array + pulse + grid sizing. The grid
// is sized from the scene (outer radius + standoff + margin + absorbing
// layers) with the phantom at the domain center.
struct Scenario {
  PhantomSpec phantom{};
  int n_elements = 8;
  double standoff = 4e-3;
  double arc_span_deg = 360.0;
  double arc_center_deg = 90.0;
  PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian_derivative};
  double dx = 0.5e-3;
  double courant = 0.7;
  double f_max = 4e9;
  int pml_cells = 10;
  double margin = 6e-3;
  long n_steps = 0;  // 0 = solver round-trip bound
  int threads = 1;
};

struct RealizedScenario {
  GridSpec grid;
  Phantom phantom;
  ArrayGeometry array;
  SolverOptions solver;
};

RealizedScenario realize(const Scenario& s, const TissueCatalog& catalog);

// Runs one FDTD simulation per transmitter (in parallel when threads > 1),
// probing Ez at every element.
RadarDataset acquire(const Phantom& phantom, const ArrayGeometry& array, const PulseSpec& pulse,
                     const GridSpec& grid, const TissueCatalog& catalog,
                     const SolverOptions& solver = {}, long n_steps = 0,
                     DatasetKind kind = DatasetKind::with_tumor, int threads = 1);

RadarDataset acquire_scenario(const Scenario& s, const TissueCatalog& catalog, bool with_tumor);

// With-tumor and calibration acquisitions over one scenario, sharing the
// record length (the auto bound differs per raster because the slowest
// medium differs, and calibration needs matching records).
struct DatasetPair {
  RadarDataset with_tumor;
  RadarDataset calibration;
};
DatasetPair acquire_pair(const Scenario& s, const TissueCatalog& catalog);

// Per-channel sample-wise subtraction isolating the tumor response.
RadarDataset calibrate(const RadarDataset& with_tumor, const RadarDataset& calibration);

// Undoes propagation loss and radial spreading: the sample at propagation
// time t (measured from the transmit peak, i.e. record time minus t0) is
// scaled by 10^(alpha_db_per_m * v * t / 20) * (v*t/2)^spreading_exponent.
// alpha comes from the medium's effective attenuation; spreading_exponent is
// the total over both legs (0.5 per leg, i.e. 1.0 total, for 2D cylindrical
// spreading).
RadarDataset equalize(const RadarDataset& resp, const MaterialProperties& medium,
                      double spreading_exponent);

struct ImageGrid {
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 1e-3;
  int nx = 0;
  int ny = 0;

  Vec2 pixel_center(int i, int j) const { return {x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dx}; }
};

struct EnergyImage {
  ImageGrid grid;
  Grid2D values;
  double peak_value = 0.0;
  CellIndex peak{0, 0};

  Vec2 peak_location() const { return grid.pixel_center(peak.i, peak.j); }
};

// Delay-and-sum focusing: per pixel, channels are aligned on the round-trip
// delay (plus the source delay t0) and summed coherently; the pixel value is
// the energy of the coherent sum over one pulse-FWHM window centered on the
// focused sample. Fractional delays use linear interpolation.
EnergyImage das_image(const RadarDataset& resp, const ImageGrid& recon, double v, int threads = 1);

struct Detection {
  Vec2 centroid{};
  double extent = 0.0;         // max chord of the threshold region, m
  double peak_db_margin = 0.0; // dB above the next-highest disjoint region; +inf if none
  double threshold_db = 0.0;
  int region_pixels = 0;
};

// Isovalue detection: the threshold region holds pixels within threshold_db
// of the peak; the reported blob is the connected component containing the
// peak, with an energy-weighted centroid.
Detection detect(const EnergyImage& img, double threshold_db = -1.5);

// For each depth, acquires with and without the tumor, calibrates, and
// reports 10*log10(sum resp^2 / sum tx_waveform^2). Exact-zero responses are
// floored at -400 dB.
std::vector<std::pair<double, double>> depth_sweep(const Scenario& scenario_template,
                                                   const std::vector<double>& depths_m,
                                                   const TissueCatalog& catalog);

}  // namespace mwave

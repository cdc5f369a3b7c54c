#pragma once

#include <string>
#include <vector>

#include "mwave/materials.hpp"
#include "mwave/phantom.hpp"
#include "mwave/pulse.hpp"
#include "mwave/radar.hpp"

namespace mwave {

// Resolved batch configuration. Sections and keys are listed in the README;
// unknown keys are hard errors, and the resolved config is fully validated
// before any simulation starts.
struct RunConfig {
  TissueCatalog catalog = TissueCatalog::defaults();

  // [grid]
  double dx = 0.5e-3;
  double courant = 0.7;
  double f_max = 4e9;
  int pml_cells = 10;
  double margin = 6e-3;

  // [phantom]
  PhantomSpec phantom{};

  // [array]
  int n_elements = 8;
  double standoff = 4e-3;
  double arc_span_deg = 360.0;
  double arc_center_deg = 90.0;

  // [pulse]
  PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian_derivative};

  // [pipeline]
  long n_steps = 0;
  int tx_index = 0;
  bool equalize_enabled = true;
  double spreading_per_leg = 0.5;
  std::string focus_tissue = "fat";
  double recon_dx = 1e-3;
  double threshold_db = -1.5;
  long snapshot_every = 0;
  std::string snapshot_format = "pgm";
  int threads = 0;  // 0 = MWAVE_THREADS env or hardware concurrency

  // [sweep]
  std::vector<double> sweep_depths{10e-3, 20e-3, 30e-3, 40e-3};

  // [sar]
  std::vector<double> sar_frequencies{1.2e9, 1.6e9, 2.0e9};
  double sar_amplitude = 1.0;
  int sar_ramp_periods = 5;
  int sar_measure_periods = 3;

  Scenario scenario() const;
  int resolved_threads() const;
  void validate() const;
};

RunConfig default_config();

// Line-oriented parse: [section] headers, key = value pairs, '#' comments.
// Lengths/times/frequencies accept unit suffixes (mm, cm, m, um; s..ps;
// Hz..GHz); bare numbers are SI.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// Shared by CLI flags that accept unit-suffixed quantities.
enum class Unit { plain, length, time, frequency };
double parse_quantity(const std::string& text, Unit unit);

}  // namespace mwave

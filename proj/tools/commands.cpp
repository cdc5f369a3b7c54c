#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "mwave/constants.hpp"
#include "mwave/design.hpp"
#include "mwave/dosimetry.hpp"
#include "mwave/errors.hpp"
#include "mwave/io.hpp"
#include "mwave/radar.hpp"

namespace mwave::cli {

namespace fs = std::filesystem;

namespace {

void ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw IoError("an output directory is required (--out)");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string kv(const std::string& key, double value) {
  return key + " = " + format_sci(value) + "\n";
}

void emit_report(const std::string& report, const std::string& out_dir,
                 const std::string& filename) {
  std::cout << report;
  if (!out_dir.empty()) {
    ensure_out_dir(out_dir);
    write_text_atomic(join(out_dir, filename), report);
  }
}

ImageGrid fat_region_grid(const Phantom& phantom, double recon_dx) {
  const double radius = phantom.spec().breast_radius;
  const Vec2 c = phantom.spec().center;
  ImageGrid g;
  g.dx = recon_dx;
  g.nx = g.ny = static_cast<int>(std::ceil(2.0 * radius / recon_dx));
  g.x0 = c.x - radius;
  g.y0 = c.y - radius;
  return g;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  const Scenario s = cfg.scenario();
  const RealizedScenario r = realize(s, cfg.catalog);
  const MaterialGrid raster = rasterize(r.phantom, r.grid, cfg.catalog, r.solver.pml_cells + 2);
  const std::vector<CellIndex> cells = r.array.cells(r.grid);

  Simulation sim(raster, r.grid, r.solver);
  sim.add_source(cells[cfg.tx_index], s.pulse);
  const long n = s.n_steps > 0 ? s.n_steps : sim.minimum_steps();

  std::vector<std::vector<double>> traces(cells.size());
  std::vector<double> tx_wave;
  for (long k = 0; k < n; ++k) {
    sim.step();
    for (size_t p = 0; p < cells.size(); ++p)
      traces[p].push_back(sim.ez()(cells[p].i, cells[p].j));
    tx_wave.push_back(pulse_value(s.pulse, sim.time()));

    if (cfg.snapshot_every > 0 && sim.state().step_index % cfg.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof(name), "snapshot_%06ld.%s", sim.state().step_index,
                    cfg.snapshot_format.c_str());
      if (cfg.snapshot_format == "pgm") {
        Grid2D mag = sim.ez();
        for (int j = 0; j < mag.ny(); ++j)
          for (int i = 0; i < mag.nx(); ++i) mag(i, j) = std::fabs(mag(i, j));
        write_pgm(join(out_dir, name), mag);
      } else {
        write_csv_matrix(join(out_dir, name), sim.ez());
      }
    }
  }

  std::vector<const std::vector<double>*> cols{&tx_wave};
  std::vector<std::string> names{"tx_waveform_v"};
  for (size_t p = 0; p < traces.size(); ++p) {
    cols.push_back(&traces[p]);
    names.push_back("ez_rx" + std::to_string(p) + "_v_per_m");
  }
  write_series_csv(join(out_dir, "traces.csv"), r.grid.dt, cols, names);
  write_csv_matrix(join(out_dir, "raster_eps_r.csv"), raster.eps_r);
  write_csv_matrix(join(out_dir, "raster_sigma.csv"), raster.sigma);
  std::cout << "simulate: " << n << " steps on a " << r.grid.nx << "x" << r.grid.ny
            << " grid, traces for " << cells.size() << " probes\n";
  return 0;
}

int cmd_image(const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  const Scenario s = cfg.scenario();
  const RealizedScenario r = realize(s, cfg.catalog);
  if (!r.phantom.spec().tumor)
    throw InvariantViolation("image: the configured phantom has no tumor to detect");

  const DatasetPair pair = acquire_pair(s, cfg.catalog);
  RadarDataset resp = calibrate(pair.with_tumor, pair.calibration);

  const MaterialProperties& focus = cfg.catalog.lookup_tissue(cfg.focus_tissue, 6e9);
  if (cfg.equalize_enabled) resp = equalize(resp, focus, 2.0 * cfg.spreading_per_leg);

  const double v = constants::c0 / std::sqrt(focus.eps_r);
  const ImageGrid recon = fat_region_grid(r.phantom, cfg.recon_dx);
  const EnergyImage img = das_image(resp, recon, v, s.threads);
  const Detection det = detect(img, cfg.threshold_db);

  write_csv_matrix(join(out_dir, "energy.csv"), img.values);
  write_pgm(join(out_dir, "energy.pgm"), img.values);

  const Vec2 center = r.phantom.spec().center;
  const double centroid_radius = distance(det.centroid, center);
  std::string report;
  report += kv("threshold_db", det.threshold_db);
  report += kv("peak_value", img.peak_value);
  report += kv("peak_x_m", img.peak_location().x);
  report += kv("peak_y_m", img.peak_location().y);
  report += kv("centroid_x_m", det.centroid.x);
  report += kv("centroid_y_m", det.centroid.y);
  report += kv("extent_m", det.extent);
  report += kv("peak_db_margin_db", det.peak_db_margin);
  report += kv("region_pixels", det.region_pixels);
  report += kv("phantom_center_x_m", center.x);
  report += kv("phantom_center_y_m", center.y);
  report += kv("centroid_radius_m", centroid_radius);
  report += kv("centroid_skin_depth_m", r.phantom.spec().breast_radius - centroid_radius);
  if (auto tc = r.phantom.tumor_center()) {
    report += kv("tumor_center_x_m", tc->x);
    report += kv("tumor_center_y_m", tc->y);
    report += kv("centroid_error_m", distance(det.centroid, *tc));
  }
  write_text_atomic(join(out_dir, "detection.txt"), report);
  std::cout << "image: centroid (" << det.centroid.x << ", " << det.centroid.y
            << ") m, skin depth " << r.phantom.spec().breast_radius - centroid_radius << " m\n";
  return 0;
}

int cmd_sweep_depth(const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  const auto curve = depth_sweep(cfg.scenario(), cfg.sweep_depths, cfg.catalog);
  write_pairs_csv(join(out_dir, "sweep.csv"), curve, "depth_m,energy_db");
  for (const auto& [depth, db] : curve)
    std::cout << "sweep-depth: " << depth * 1e3 << " mm -> " << db << " dB\n";
  return 0;
}

int cmd_sar(const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  const Scenario s = cfg.scenario();
  const NarrowbandOptions nb{cfg.sar_amplitude, cfg.sar_ramp_periods, cfg.sar_measure_periods};
  const auto curve = differential_sar_curve(s, cfg.catalog, cfg.sar_frequencies, nb);
  const double best = best_frequency_from_curve(curve);

  const RealizedScenario r = realize(s, cfg.catalog);
  const MaterialGrid raster = rasterize(r.phantom, r.grid, cfg.catalog, r.solver.pml_cells + 2);
  const Grid2D e_rms =
      narrowband_e_rms(raster, r.grid, r.solver, r.array.cells(r.grid).front(), best, nb);
  const SarMap map = sar_map(e_rms, raster.sigma, raster.rho, r.grid.dx, best);

  write_csv_matrix(join(out_dir, "sar_map.csv"), map.values);
  write_pgm(join(out_dir, "sar_map.pgm"), map.values);
  write_pairs_csv(join(out_dir, "sar_sweep.csv"), curve, "freq_hz,diff_sar_w_per_kg",
                  "best_frequency_hz = " + format_sci(best));
  std::cout << "sar: best frequency " << best / 1e9 << " GHz\n";
  return 0;
}

int cmd_design_patch(double f0, double eps_r, double h, const std::string& out_dir) {
  const PatchDesign d = design_rect_patch(f0, eps_r, h);
  std::string report;
  report += kv("f0_hz", d.f0);
  report += kv("eps_r", d.eps_r);
  report += kv("h_m", d.h);
  report += kv("width_m", d.width);
  report += kv("eps_eff", d.eps_eff);
  report += kv("delta_l_m", d.delta_l);
  report += kv("l_eff_m", d.l_eff);
  report += kv("length_m", d.length);
  report += kv("ground_l_m", d.ground_l);
  report += kv("ground_w_m", d.ground_w);
  report += kv("cavity_resonance_hz", cavity_resonance(d.length, d.delta_l, d.eps_eff));
  emit_report(report, out_dir, "patch_design.txt");
  return 0;
}

int cmd_design_monopole(double f_low, double eps_r, const std::string& out_dir) {
  const MonopoleDesign d = design_monopole(f_low, eps_r);
  std::string report;
  report += kv("f_low_hz", d.f_low);
  report += kv("eps_r", d.eps_r);
  report += kv("length_m", d.length);
  report += kv("length_mm", d.length * 1e3);
  emit_report(report, out_dir, "monopole_design.txt");
  return 0;
}

int cmd_metrics_vswr(double s11_db) {
  const double vswr = s11_db_to_vswr(s11_db);
  std::cout << "vswr = " << format_sci(vswr) << "\n";
  return 0;
}

int cmd_metrics_bandwidth(const std::string& csv_path, double threshold_db) {
  S11Curve curve{read_pairs_csv(csv_path)};
  const std::vector<Band> bands = bandwidth_at_threshold(curve, threshold_db);
  std::string report = "n_bands = " + std::to_string(bands.size()) + "\n";
  for (size_t k = 0; k < bands.size(); ++k) {
    report += kv("band" + std::to_string(k) + "_f_low_hz", bands[k].f_low);
    report += kv("band" + std::to_string(k) + "_f_high_hz", bands[k].f_high);
    report += kv("band" + std::to_string(k) + "_width_hz", bands[k].f_high - bands[k].f_low);
  }
  std::cout << report;
  return 0;
}

}  // namespace mwave::cli

#include "mwave/radar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"
#include "mwave/parallel.hpp"

namespace mwave {

using constants::c0;

RealizedScenario realize(const Scenario& s, const TissueCatalog& catalog) {
  PhantomSpec spec = s.phantom;
  const double half = spec.breast_radius + spec.skin_thickness + s.standoff + s.margin;
  const int half_cells = static_cast<int>(std::ceil(half / s.dx)) + s.pml_cells;
  const int n = 2 * half_cells;

  GridSpec grid = make_grid(n, n, s.dx, s.courant);
  spec.center = {grid.width() / 2.0, grid.height() / 2.0};
  Phantom phantom = build_phantom(spec);

  // Resolution check against the densest tissue that can appear in the scene.
  double max_eps = 1.0;
  const RegionMaterials& m = spec.materials;
  for (const std::string* name : {&m.background, &m.skin, &m.fat, &m.tumor})
    max_eps = std::max(max_eps, catalog.lookup_tissue(*name, 6e9).eps_r);
  validate_resolution(grid, s.f_max, max_eps);

  SolverOptions solver;
  solver.pml_cells = s.pml_cells;

  ArrayGeometry array = make_arc_array(phantom, grid, s.n_elements, s.standoff, s.arc_span_deg,
                                       s.arc_center_deg, s.pml_cells + 2);
  return RealizedScenario{grid, std::move(phantom), std::move(array), solver};
}

RadarDataset acquire(const Phantom& phantom, const ArrayGeometry& array, const PulseSpec& pulse,
                     const GridSpec& grid, const TissueCatalog& catalog,
                     const SolverOptions& solver, long n_steps, DatasetKind kind, int threads) {
  pulse.validate();
  const bool any_pml = solver.boundaries.x_lo == BoundaryKind::cpml ||
                       solver.boundaries.x_hi == BoundaryKind::cpml ||
                       solver.boundaries.y_lo == BoundaryKind::cpml ||
                       solver.boundaries.y_hi == BoundaryKind::cpml;
  const int margin_cells = (any_pml ? solver.pml_cells : 0) + 2;
  const MaterialGrid raster = rasterize(phantom, grid, catalog, margin_cells);

  const std::vector<CellIndex> cells = array.cells(grid);
  const int n = static_cast<int>(cells.size());
  if (n < 2) throw GeometryError("acquire: need at least 2 array elements");

  const long n_eff =
      n_steps > 0 ? n_steps
                  : minimum_run_steps(grid, raster.max_eps_r(), pulse.t0 + 3.0 * pulse.fwhm);

  RadarDataset ds;
  ds.n_elements = n;
  ds.dt = grid.dt;
  ds.array = array;
  ds.pulse = pulse;
  ds.kind = kind;
  ds.traces.assign(size_t(n) * n, {});

  std::vector<std::vector<double>> waveforms(n);
  parallel_for(n, threads, [&](int tx) {
    Simulation sim(raster, grid, solver);
    sim.add_source(cells[tx], pulse);
    ProbeTraces probes = sim.run(n_eff, cells);
    for (int rx = 0; rx < n; ++rx) ds.trace(tx, rx) = std::move(probes.ez[rx]);
    waveforms[tx] = std::move(probes.tx_waveform);
  });
  ds.tx_waveform = std::move(waveforms[0]);
  return ds;
}

RadarDataset acquire_scenario(const Scenario& s, const TissueCatalog& catalog, bool with_tumor) {
  RealizedScenario r = realize(s, catalog);
  const Phantom phantom =
      with_tumor ? r.phantom : build_phantom(r.phantom.spec().without_tumor());
  return acquire(phantom, r.array, s.pulse, r.grid, catalog, r.solver, s.n_steps,
                 with_tumor ? DatasetKind::with_tumor : DatasetKind::calibration, s.threads);
}

DatasetPair acquire_pair(const Scenario& s, const TissueCatalog& catalog) {
  RealizedScenario r = realize(s, catalog);
  const Phantom calibration = build_phantom(r.phantom.spec().without_tumor());

  long n_steps = s.n_steps;
  if (n_steps == 0) {
    // The slower of the two rasters decides, so both records line up.
    double max_eps = 1.0;
    const RegionMaterials& m = r.phantom.spec().materials;
    for (const std::string* name : {&m.background, &m.skin, &m.fat, &m.tumor})
      max_eps = std::max(max_eps, catalog.lookup_tissue(*name, 6e9).eps_r);
    n_steps = minimum_run_steps(r.grid, max_eps, s.pulse.t0 + 3.0 * s.pulse.fwhm);
  }

  DatasetPair pair;
  pair.with_tumor = acquire(r.phantom, r.array, s.pulse, r.grid, catalog, r.solver, n_steps,
                            DatasetKind::with_tumor, s.threads);
  pair.calibration = acquire(calibration, r.array, s.pulse, r.grid, catalog, r.solver, n_steps,
                             DatasetKind::calibration, s.threads);
  return pair;
}

RadarDataset calibrate(const RadarDataset& with_tumor, const RadarDataset& calibration) {
  if (with_tumor.n_elements != calibration.n_elements)
    throw MismatchedAcquisition("calibrate: element counts differ");
  if (with_tumor.dt != calibration.dt) throw MismatchedAcquisition("calibrate: dt differs");
  if (with_tumor.n_samples() != calibration.n_samples())
    throw MismatchedAcquisition("calibrate: record lengths differ");
  if (!(with_tumor.array == calibration.array))
    throw MismatchedAcquisition("calibrate: array geometries differ");
  if (!(with_tumor.pulse == calibration.pulse))
    throw MismatchedAcquisition("calibrate: pulse specs differ");
  if (with_tumor.tx_waveform != calibration.tx_waveform)
    throw MismatchedAcquisition("calibrate: transmit waveforms differ");

  RadarDataset out = with_tumor;
  out.kind = DatasetKind::tumor_response;
  for (size_t ch = 0; ch < out.traces.size(); ++ch) {
    const std::vector<double>& cal = calibration.traces[ch];
    std::vector<double>& tr = out.traces[ch];
    for (size_t k = 0; k < tr.size(); ++k) tr[k] -= cal[k];
  }
  return out;
}

RadarDataset equalize(const RadarDataset& resp, const MaterialProperties& medium,
                      double spreading_exponent) {
  if (resp.kind != DatasetKind::tumor_response)
    throw InvariantViolation("equalize: dataset must be a tumor response");
  const double alpha_db_per_m = effective_attenuation_db_per_cm(medium) * 100.0;
  const double v = c0 / std::sqrt(medium.eps_r);

  RadarDataset out = resp;
  const long n = resp.n_samples();
  std::vector<double> gain(n);
  for (long k = 0; k < n; ++k) {
    // Propagation time is measured from the transmit peak; the record clock
    // starts a quiet-start delay t0 earlier.
    const double t = std::max(0.0, (k + 1) * resp.dt - resp.pulse.t0);
    gain[k] = std::pow(10.0, alpha_db_per_m * v * t / 20.0) *
              std::pow(v * t / 2.0, spreading_exponent);
  }
  for (auto& tr : out.traces)
    for (long k = 0; k < n; ++k) tr[k] *= gain[k];
  return out;
}

namespace {

// Linear interpolation on the run() clock (sample k holds t = (k+1)*dt).
inline double sample_at(const std::vector<double>& tr, double t, double dt) {
  const double x = t / dt - 1.0;
  const long k = static_cast<long>(std::floor(x));
  if (k < 0 || k + 1 >= static_cast<long>(tr.size()))
    throw OutOfRecord("das_image: focusing delay outside the recorded traces");
  const double f = x - k;
  return tr[k] + f * (tr[k + 1] - tr[k]);
}

}  // namespace

EnergyImage das_image(const RadarDataset& resp, const ImageGrid& recon, double v, int threads) {
  if (!(v > 0.0)) throw InvariantViolation("das_image: focusing speed must be > 0");
  if (recon.nx < 1 || recon.ny < 1 || !(recon.dx > 0.0))
    throw InvariantViolation("das_image: empty reconstruction grid");
  if (resp.traces.empty() || resp.n_samples() < 2)
    throw InvariantViolation("das_image: dataset has no usable traces");

  const int n = resp.n_elements;
  const long window = std::max<long>(1, std::lround(resp.pulse.fwhm / resp.dt));
  const double w_start = -0.5 * (window - 1) * resp.dt;

  EnergyImage img;
  img.grid = recon;
  img.values = Grid2D(recon.nx, recon.ny);

  parallel_for(recon.ny, threads, [&](int j) {
    std::vector<double> coherent(window);
    for (int i = 0; i < recon.nx; ++i) {
      const Vec2 px = recon.pixel_center(i, j);
      std::fill(coherent.begin(), coherent.end(), 0.0);
      for (int tx = 0; tx < n; ++tx) {
        const double d_tx = distance(resp.array.elements[tx], px);
        for (int rx = 0; rx < n; ++rx) {
          const double tau = (d_tx + distance(px, resp.array.elements[rx])) / v;
          const double t_focus = resp.pulse.t0 + tau + w_start;
          const std::vector<double>& tr = resp.trace(tx, rx);
          for (long w = 0; w < window; ++w)
            coherent[w] += sample_at(tr, t_focus + w * resp.dt, resp.dt);
        }
      }
      double energy = 0.0;
      for (long w = 0; w < window; ++w) energy += coherent[w] * coherent[w];
      img.values(i, j) = energy;
    }
  });

  img.peak_value = 0.0;
  img.peak = {0, 0};
  for (int j = 0; j < recon.ny; ++j)
    for (int i = 0; i < recon.nx; ++i)
      if (img.values(i, j) > img.peak_value) {
        img.peak_value = img.values(i, j);
        img.peak = {i, j};
      }
  return img;
}

namespace {

struct Component {
  double max_value = 0.0;
  double energy = 0.0;
  double wx = 0.0, wy = 0.0;  // energy-weighted centroid accumulators
  std::vector<CellIndex> pixels;

  Vec2 centroid(const ImageGrid& g) const {
    if (energy <= 0.0) {
      // Degenerate all-zero component; fall back to the pixel mean.
      double sx = 0.0, sy = 0.0;
      for (const CellIndex& c : pixels) {
        const Vec2 p = g.pixel_center(c.i, c.j);
        sx += p.x;
        sy += p.y;
      }
      return {sx / pixels.size(), sy / pixels.size()};
    }
    return {wx / energy, wy / energy};
  }
};

// Max chord via the convex hull (monotone chain), so large regions stay cheap.
double max_chord(const std::vector<Vec2>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Vec2> p = pts;
  std::sort(p.begin(), p.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  auto cross = [](Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec2> hull(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k);
  double best = 0.0;
  for (size_t a = 0; a < hull.size(); ++a)
    for (size_t b = a + 1; b < hull.size(); ++b) best = std::max(best, distance(hull[a], hull[b]));
  return best;
}

}  // namespace

Detection detect(const EnergyImage& img, double threshold_db) {
  if (!(img.peak_value > 0.0)) throw FlatImage("detect: image has no positive peak");
  const double threshold = img.peak_value * std::pow(10.0, threshold_db / 10.0);

  const int nx = img.grid.nx;
  const int ny = img.grid.ny;
  std::vector<int> label(size_t(nx) * ny, -1);
  auto at = [&](int i, int j) -> int& { return label[size_t(j) * nx + i]; };
  auto masked = [&](int i, int j) { return img.values(i, j) >= threshold; };

  std::vector<Component> comps;
  std::vector<CellIndex> stack;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!masked(i, j) || at(i, j) >= 0) continue;
      const int id = static_cast<int>(comps.size());
      comps.emplace_back();
      Component& comp = comps.back();
      stack.assign(1, {i, j});
      at(i, j) = id;
      while (!stack.empty()) {
        const CellIndex c = stack.back();
        stack.pop_back();
        comp.pixels.push_back(c);
        const double val = img.values(c.i, c.j);
        const Vec2 p = img.grid.pixel_center(c.i, c.j);
        comp.max_value = std::max(comp.max_value, val);
        comp.energy += val;
        comp.wx += val * p.x;
        comp.wy += val * p.y;
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            const int ni = c.i + di;
            const int nj = c.j + dj;
            if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) continue;
            if (!masked(ni, nj) || at(ni, nj) >= 0) continue;
            at(ni, nj) = id;
            stack.push_back({ni, nj});
          }
      }
    }
  }

  // The reported blob is the component holding the peak value. If several
  // components tie at the exact peak, the largest integrated energy wins,
  // then the lowest (y, x) centroid.
  int chosen = -1;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (comps[c].max_value != img.peak_value) continue;
    if (chosen < 0) {
      chosen = c;
      continue;
    }
    const Component& a = comps[c];
    const Component& b = comps[chosen];
    if (a.energy > b.energy) {
      chosen = c;
    } else if (a.energy == b.energy) {
      const Vec2 ca = a.centroid(img.grid);
      const Vec2 cb = b.centroid(img.grid);
      if (ca.y < cb.y || (ca.y == cb.y && ca.x < cb.x)) chosen = c;
    }
  }

  const Component& comp = comps[chosen];
  Detection det;
  det.threshold_db = threshold_db;
  det.centroid = comp.centroid(img.grid);
  det.region_pixels = static_cast<int>(comp.pixels.size());

  std::vector<Vec2> pts;
  pts.reserve(comp.pixels.size());
  for (const CellIndex& c : comp.pixels) pts.push_back(img.grid.pixel_center(c.i, c.j));
  det.extent = max_chord(pts);

  double other_max = 0.0;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    if (c != chosen) other_max = std::max(other_max, comps[c].max_value);
  det.peak_db_margin = other_max > 0.0 ? 10.0 * std::log10(img.peak_value / other_max)
                                       : std::numeric_limits<double>::infinity();
  return det;
}

std::vector<std::pair<double, double>> depth_sweep(const Scenario& scenario_template,
                                                   const std::vector<double>& depths_m,
                                                   const TissueCatalog& catalog) {
  if (!scenario_template.phantom.tumor)
    throw InvariantViolation("depth_sweep: scenario template needs a tumor");

  std::vector<std::pair<double, double>> curve;
  curve.reserve(depths_m.size());
  for (double depth : depths_m) {
    Scenario s = scenario_template;
    s.phantom.tumor->depth = depth;
    const DatasetPair pair = acquire_pair(s, catalog);
    const RadarDataset resp = calibrate(pair.with_tumor, pair.calibration);

    double energy = 0.0;
    for (const auto& tr : resp.traces)
      for (double x : tr) energy += x * x;
    double ref = 0.0;
    for (double x : resp.tx_waveform) ref += x * x;

    const double db = energy > 0.0 ? 10.0 * std::log10(energy / ref) : -400.0;
    curve.emplace_back(depth, db);
  }
  return curve;
}

}  // namespace mwave

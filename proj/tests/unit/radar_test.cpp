#include <doctest.h>

#include <cmath>
#include <vector>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"
#include "mwave/materials.hpp"
#include "mwave/radar.hpp"

using namespace mwave;
using constants::c0;

namespace {

double peak_abs(const std::vector<double>& tr) {
  double best = 0.0;
  for (double x : tr) best = std::max(best, std::fabs(x));
  return best;
}

RadarDataset synthetic_dataset(const std::vector<Vec2>& elements, long n_samples, double dt,
                               const PulseSpec& pulse) {
  RadarDataset ds;
  ds.n_elements = static_cast<int>(elements.size());
  ds.dt = dt;
  ds.array.elements = elements;
  ds.array.standoff = 1e-3;
  ds.pulse = pulse;
  ds.traces.assign(elements.size() * elements.size(), std::vector<double>(n_samples, 0.0));
  ds.tx_waveform.assign(n_samples, 0.0);
  for (long k = 0; k < n_samples; ++k) ds.tx_waveform[k] = pulse_value(pulse, (k + 1) * dt);
  return ds;
}

// Marches a straight ray from `from` toward `to` through the raster and
// accumulates time of flight at the local wave speed until the predicate
// cell is reached; the independent oracle for echo timing.
double ray_tof_to_tumor(const MaterialGrid& mat, const GridSpec& g, Vec2 from, Vec2 to,
                        double tumor_eps) {
  const double total = distance(from, to);
  const double step = g.dx / 8.0;
  double tof = 0.0;
  for (double s = 0.0; s < total; s += step) {
    const Vec2 p = from + (s / total) * (to - from);
    const CellIndex c = nearest_cell(g, p);
    const double eps = mat.eps_r(c.i, c.j);
    if (eps == tumor_eps) return tof;
    tof += step * std::sqrt(eps) / c0;
  }
  return tof;
}

// First break: earliest crossing of 5% of the channel's peak magnitude,
// sub-sample by linear interpolation; sample k sits at t = (k+1)*dt. A low
// threshold tracks the leading edge instead of later internal echoes of the
// high-contrast tumor.
double first_break_onset(const std::vector<double>& tr, double dt) {
  const double thr = 0.05 * peak_abs(tr);
  for (size_t k = 0; k < tr.size(); ++k) {
    if (std::fabs(tr[k]) >= thr) {
      if (k == 0) return dt;
      const double y0 = std::fabs(tr[k - 1]);
      const double y1 = std::fabs(tr[k]);
      return (k + (thr - y0) / (y1 - y0)) * dt;
    }
  }
  return 0.0;
}

const PulseSpec kPulse400{1.0, 1.2e-9, 400e-12, PulseShape::gaussian_derivative};

Scenario small_scene() {
  Scenario s;
  s.phantom.breast_radius = 40e-3;
  s.phantom.skin_thickness = 2e-3;
  s.phantom.tumor = TumorSpec{10e-3, 12e-3, 90.0};
  s.n_elements = 4;
  s.standoff = 4e-3;
  s.pulse = kPulse400;
  s.dx = 1e-3;
  s.f_max = 2e9;
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("radar");

TEST_CASE("calibrate: identity, linearity, and metadata checks") {
  const PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian};
  RadarDataset a = synthetic_dataset({{0, 0}, {0.05, 0}}, 64, 1e-11, pulse);
  // Values on a coarse binary grid so sums and differences are exact.
  unsigned long long st = 99;
  auto rnd = [&]() {
    st = st * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(int((st >> 40) & 0xFFFF) - 32768) / 1024.0;
  };
  for (auto& tr : a.traces)
    for (auto& x : tr) x = rnd();

  SUBCASE("calibrate(A, A) is identically zero") {
    const RadarDataset z = calibrate(a, a);
    CHECK(z.kind == DatasetKind::tumor_response);
    for (const auto& tr : z.traces)
      for (double x : tr) CHECK(x == 0.0);
  }

  SUBCASE("(A+B) calibrated against A returns B exactly") {
    RadarDataset b = a;
    for (auto& tr : b.traces)
      for (auto& x : tr) x = rnd();
    RadarDataset sum = a;
    for (size_t ch = 0; ch < sum.traces.size(); ++ch)
      for (size_t k = 0; k < sum.traces[ch].size(); ++k)
        sum.traces[ch][k] = a.traces[ch][k] + b.traces[ch][k];
    const RadarDataset resp = calibrate(sum, a);
    for (size_t ch = 0; ch < resp.traces.size(); ++ch)
      for (size_t k = 0; k < resp.traces[ch].size(); ++k)
        CHECK(resp.traces[ch][k] == b.traces[ch][k]);
  }

  SUBCASE("metadata mismatches are rejected") {
    RadarDataset other = synthetic_dataset({{0, 0}, {0.05, 0}}, 64, 2e-11, pulse);
    CHECK_THROWS_AS(calibrate(a, other), MismatchedAcquisition);
    other = synthetic_dataset({{0, 0}, {0.05, 0}}, 32, 1e-11, pulse);
    CHECK_THROWS_AS(calibrate(a, other), MismatchedAcquisition);
    other = synthetic_dataset({{0, 0}, {0.06, 0}}, 64, 1e-11, pulse);
    CHECK_THROWS_AS(calibrate(a, other), MismatchedAcquisition);
    other = synthetic_dataset({{0, 0}, {0.05, 0}}, 64, 1e-11,
                              PulseSpec{2.0, 600e-12, 200e-12, PulseShape::gaussian});
    CHECK_THROWS_AS(calibrate(a, other), MismatchedAcquisition);
  }
}

TEST_CASE("equalize: bit-exact identity and the 6 cm gain") {
  const PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian};
  RadarDataset resp = synthetic_dataset({{0, 0}, {0.05, 0}}, 128, 1e-11, pulse);
  resp.kind = DatasetKind::tumor_response;
  unsigned long long st = 7;
  for (auto& tr : resp.traces)
    for (auto& x : tr) {
      st = st * 2862933555777941757ULL + 3037000493ULL;
      x = double(st >> 11) / double(1ULL << 53) - 0.5;
    }

  SUBCASE("alpha = 0, exponent = 0 is the identity") {
    const MaterialProperties vacuum = TissueCatalog::defaults().lookup_tissue("vacuum", 6e9);
    const RadarDataset eq = equalize(resp, vacuum, 0.0);
    for (size_t ch = 0; ch < eq.traces.size(); ++ch)
      for (size_t k = 0; k < eq.traces[ch].size(); ++k)
        CHECK(eq.traces[ch][k] == resp.traces[ch][k]);
  }

  SUBCASE("0.8 dB/cm over a 6 cm path gives the 1.738 gain") {
    MaterialProperties medium{"m", 10.0, 0.0, 0.8, 1000.0};
    const double v = c0 / std::sqrt(10.0);
    // Propagation time for a 6 cm total path, placed exactly on sample 99.
    const double t_prop = 0.06 / v;
    RadarDataset spike = synthetic_dataset({{0, 0}, {0.05, 0}}, 128, 0.0, pulse);
    spike.kind = DatasetKind::tumor_response;
    spike.dt = (t_prop + pulse.t0) / 100.0;
    spike.trace(0, 0)[99] = 1.0;
    const RadarDataset eq = equalize(spike, medium, 0.0);
    CHECK(eq.trace(0, 0)[99] == doctest::Approx(1.7378).epsilon(1e-3));
  }

  SUBCASE("a non-response dataset is rejected") {
    RadarDataset raw = resp;
    raw.kind = DatasetKind::with_tumor;
    CHECK_THROWS_AS(equalize(raw, TissueCatalog::defaults().lookup_tissue("vacuum", 6e9), 0.0),
                    InvariantViolation);
  }
}

TEST_CASE("das focuses a monostatic point echo at the right range") {
  const PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian};
  const double v = 1e8;
  const double d = 25e-3;
  const double tau = 2.0 * d / v;
  CHECK(tau == doctest::Approx(0.5e-9));

  RadarDataset ds = synthetic_dataset({{0.0, 0.0}}, 600, 5e-12, pulse);
  ds.kind = DatasetKind::tumor_response;
  for (long k = 0; k < 600; ++k)
    ds.trace(0, 0)[k] = pulse_value(pulse, (k + 1) * ds.dt - tau);

  ImageGrid recon{4.75e-3, -0.25e-3, 0.5e-3, 80, 1};
  const EnergyImage img = das_image(ds, recon, v);
  CHECK(img.peak_location().x == doctest::Approx(d).epsilon(0.02));
  CHECK(img.peak_location().y == 0.0);
}

TEST_CASE("a target equidistant from all channels beats single-channel images") {
  const PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian};
  const Vec2 target{0.0, 0.03};
  const std::vector<Vec2> elements = {{-0.03, 0.03}, {0.0, 0.0}, {0.03, 0.03}};
  const double v = 1e8;

  RadarDataset all = synthetic_dataset(elements, 1200, 5e-12, pulse);
  all.kind = DatasetKind::tumor_response;
  for (int tx = 0; tx < 3; ++tx)
    for (int rx = 0; rx < 3; ++rx) {
      const double tau = (distance(elements[tx], target) + distance(target, elements[rx])) / v;
      for (long k = 0; k < 1200; ++k)
        all.trace(tx, rx)[k] = pulse_value(pulse, (k + 1) * all.dt - tau);
    }

  ImageGrid recon{-0.002 + target.x, -0.002 + target.y, 1e-3, 4, 4};
  const EnergyImage img_all = das_image(all, recon, v);
  for (int ch = 0; ch < 9; ++ch) {
    RadarDataset single = all;
    for (int o = 0; o < 9; ++o)
      if (o != ch) single.traces[o].assign(1200, 0.0);
    const EnergyImage img_one = das_image(single, recon, v);
    CHECK(img_all.peak_value >= img_one.peak_value);
  }
}

TEST_CASE("detect handles spikes, degenerate thresholds, and flat images") {
  EnergyImage img;
  img.grid = ImageGrid{0.0, 0.0, 1e-3, 16, 16};
  img.values = Grid2D(16, 16, 0.0);

  SUBCASE("flat image is an error") {
    img.peak_value = 0.0;
    CHECK_THROWS_AS(detect(img, -1.5), FlatImage);
  }

  SUBCASE("single-pixel spike") {
    img.values(5, 9) = 2.0;
    img.peak_value = 2.0;
    img.peak = {5, 9};
    const Detection det = detect(img, -1.5);
    CHECK(det.centroid.x == doctest::Approx(5.5e-3));
    CHECK(det.centroid.y == doctest::Approx(9.5e-3));
    CHECK(det.extent == 0.0);
    CHECK(det.region_pixels == 1);
    CHECK(std::isinf(det.peak_db_margin));
  }

  SUBCASE("threshold 0 keeps exactly the peak-valued pixels") {
    img.values(5, 9) = 2.0;
    img.values(6, 9) = 2.0;
    img.values(7, 9) = 1.999;
    img.peak_value = 2.0;
    img.peak = {5, 9};
    const Detection det = detect(img, 0.0);
    CHECK(det.region_pixels == 2);
    CHECK(det.extent == doctest::Approx(1e-3));
  }

  SUBCASE("margin reports the next disjoint region") {
    img.values(2, 2) = 4.0;
    img.values(12, 12) = 3.0;
    img.peak_value = 4.0;
    img.peak = {2, 2};
    const Detection det = detect(img, -3.0);
    CHECK(det.region_pixels == 1);
    CHECK(det.peak_db_margin == doctest::Approx(10.0 * std::log10(4.0 / 3.0)));
  }
}

TEST_CASE("trace scaling scales pixels by k^2 and fixes the centroid") {
  const PulseSpec pulse{1.0, 600e-12, 200e-12, PulseShape::gaussian};
  const double v = 1e8;
  RadarDataset ds = synthetic_dataset({{0.0, 0.0}, {0.02, 0.0}}, 800, 5e-12, pulse);
  ds.kind = DatasetKind::tumor_response;
  for (int tx = 0; tx < 2; ++tx)
    for (int rx = 0; rx < 2; ++rx) {
      const Vec2 t{0.01, 0.025};
      const double tau =
          (distance(ds.array.elements[tx], t) + distance(t, ds.array.elements[rx])) / v;
      for (long k = 0; k < 800; ++k)
        ds.trace(tx, rx)[k] = pulse_value(pulse, (k + 1) * ds.dt - tau);
    }
  ImageGrid recon{-0.005, 0.005, 1e-3, 30, 40};
  const EnergyImage img1 = das_image(ds, recon, v);

  const double k_scale = 3.7;
  RadarDataset scaled = ds;
  for (auto& tr : scaled.traces)
    for (auto& x : tr) x *= k_scale;
  const EnergyImage img2 = das_image(scaled, recon, v);

  const double k2 = k_scale * k_scale;
  for (int j = 0; j < recon.ny; ++j)
    for (int i = 0; i < recon.nx; ++i)
      CHECK(std::fabs(img2.values(i, j) - k2 * img1.values(i, j)) <=
            1e-9 * k2 * std::max(img1.values(i, j), img1.peak_value * 1e-12));

  const Detection d1 = detect(img1, -1.5);
  const Detection d2 = detect(img2, -1.5);
  CHECK(d1.centroid.x == doctest::Approx(d2.centroid.x).epsilon(1e-12));
  CHECK(d1.centroid.y == doctest::Approx(d2.centroid.y).epsilon(1e-12));
  CHECK(d1.region_pixels == d2.region_pixels);
}

TEST_CASE("acquired traces are reciprocal in a homogeneous lossless scene") {
  Scenario s;
  s.phantom.breast_radius = 20e-3;
  s.phantom.skin_thickness = 1e-3;
  s.phantom.tumor.reset();
  s.phantom.materials = {"vacuum", "vacuum", "vacuum", "vacuum"};
  s.n_elements = 2;
  s.standoff = 5e-3;
  s.arc_center_deg = 0.0;
  s.pulse = PulseSpec{1.0, 600e-12, 200e-12, PulseShape::gaussian_derivative};
  s.dx = 2e-3;
  s.f_max = 4e9;

  const RadarDataset ds = acquire_scenario(s, TissueCatalog::defaults(), true);
  CHECK(ds.n_elements == 2);
  const double scale = peak_abs(ds.trace(0, 1));
  REQUIRE(scale > 0.0);
  for (long k = 0; k < ds.n_samples(); ++k)
    CHECK(std::fabs(ds.trace(0, 1)[k] - ds.trace(1, 0)[k]) <= 1e-6 * scale);
}

TEST_CASE("off-diagonal arrivals follow element separation at c") {
  Scenario s;
  s.phantom.breast_radius = 60e-3;
  s.phantom.skin_thickness = 1e-3;
  s.phantom.tumor.reset();
  s.phantom.materials = {"vacuum", "vacuum", "vacuum", "vacuum"};
  s.n_elements = 4;
  s.standoff = 5e-3;
  s.arc_center_deg = 0.0;
  s.pulse = PulseSpec{1.0, 600e-12, 200e-12, PulseShape::gaussian_derivative};
  s.dx = 2e-3;
  s.f_max = 4e9;
  const TissueCatalog cat = TissueCatalog::defaults();
  const RadarDataset ds = acquire_scenario(s, cat, true);

  // Diagonal channels contain the direct pulse: the co-located response
  // peaks inside the injection window.
  {
    const std::vector<double>& diag = ds.trace(0, 0);
    size_t best = 0;
    double bv = 0.0;
    for (size_t k = 0; k < diag.size(); ++k)
      if (std::fabs(diag[k]) > bv) {
        bv = std::fabs(diag[k]);
        best = k;
      }
    CHECK(bv > 0.0);
    CHECK(std::fabs((best + 1) * ds.dt - s.pulse.t0) <= s.pulse.fwhm);
  }

  auto peak_time = [&](const std::vector<double>& tr) {
    size_t best = 0;
    double bv = 0.0;
    for (size_t k = 0; k < tr.size(); ++k)
      if (std::fabs(tr[k]) > bv) {
        bv = std::fabs(tr[k]);
        best = k;
      }
    const double y0 = std::fabs(tr[best - 1]);
    const double y2 = std::fabs(tr[best + 1]);
    const double den = y0 - 2.0 * bv + y2;
    return (best + 1 + (den != 0.0 ? 0.5 * (y0 - y2) / den : 0.0)) * ds.dt;
  };
  // Same far-field waveform on both channels, so the differential peak time
  // is a clean time-of-flight estimate.
  const double d01 = distance(ds.array.elements[0], ds.array.elements[1]);
  const double d02 = distance(ds.array.elements[0], ds.array.elements[2]);
  const double measured = peak_time(ds.trace(0, 2)) - peak_time(ds.trace(0, 1));
  CHECK(std::fabs(measured - (d02 - d01) / c0) <= ds.dt);
}

TEST_CASE("calibrated response is causal and its onsets track ray time of flight") {
  const TissueCatalog cat = TissueCatalog::defaults();
  const Scenario s = small_scene();
  const RealizedScenario r = realize(s, cat);
  const DatasetPair pair = acquire_pair(s, cat);
  const RadarDataset resp = calibrate(pair.with_tumor, pair.calibration);

  const MaterialGrid raster = rasterize(r.phantom, r.grid, cat, r.solver.pml_cells + 2);
  const Vec2 tumor = *r.phantom.tumor_center();
  const double tumor_eps = cat.lookup_tissue("tumor", 6e9).eps_r;

  double global_peak = 0.0;
  for (const auto& tr : resp.traces) global_peak = std::max(global_peak, peak_abs(tr));
  REQUIRE(global_peak > 0.0);

  SUBCASE("nothing before the earliest possible round trip") {
    for (int ch = 0; ch < resp.n_elements; ++ch) {
      const double d_min = distance(resp.array.elements[ch], tumor) - 5e-3;
      const double t_guard = s.pulse.t0 + 2.0 * d_min / c0 - 6.0 * s.pulse.tau();
      const long k_end = static_cast<long>(t_guard / resp.dt);
      for (long k = 0; k < k_end; ++k)
        CHECK(std::fabs(resp.trace(ch, ch)[k]) <= 1e-6 * global_peak);
    }
  }

  SUBCASE("monostatic onsets differ by twice the ray TOF difference") {
    // Elements sit at 90/180/270/0 degrees with the tumor on the 90 axis, so
    // channels 1 and 3 are mirror images: their onsets must agree to the
    // estimator's own precision. Against the straight-ray oracle the bound
    // is physical, not numerical: skin refraction and the lossy fat's
    // dispersion shift the first break by a few percent of the path delay.
    std::vector<double> onset(resp.n_elements), tof(resp.n_elements);
    for (int ch = 0; ch < resp.n_elements; ++ch) {
      onset[ch] = first_break_onset(resp.trace(ch, ch), resp.dt);
      tof[ch] = ray_tof_to_tumor(raster, r.grid, resp.array.elements[ch], tumor, tumor_eps);
    }
    // Channels 1 and 3 have near-identical paths, so the pulse reshaping
    // cancels between them and the ray differential holds to 2 samples.
    CHECK(std::fabs((onset[1] - onset[3]) - 2.0 * (tof[1] - tof[3])) <= 2.0 * resp.dt);
    for (int ch = 1; ch < resp.n_elements; ++ch) {
      const double measured = onset[ch] - onset[0];
      const double expected = 2.0 * (tof[ch] - tof[0]);
      CHECK(std::fabs(measured - expected) <= 0.05 * std::fabs(expected) + 2.0 * resp.dt);
    }
  }
}

TEST_CASE("equalization levels two scatterer depths in a lossless medium") {
  // Uniform eps_r = 9 background, two runs with a small high-contrast disk at
  // ranges d and 2d from a monostatic element, plus one empty run.
  const double dx = 1.25e-3;
  const int nx = 140, ny = 120;
  const GridSpec g = make_grid(nx, ny, dx, 0.7);
  const PulseSpec pulse{1.0, 800e-12, 250e-12, PulseShape::gaussian_derivative};
  const CellIndex src{20, 60};

  auto run_scene = [&](int disk_i) {
    MaterialGrid mat = uniform_material(nx, ny, 9.0, 0.0);
    if (disk_i > 0)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          if (std::hypot((i - disk_i) * dx, (j - 60) * dx) <= 3e-3) mat.eps_r(i, j) = 20.0;
    Simulation sim(mat, g);
    sim.add_source(src, pulse);
    return sim.run(1400, {src});
  };

  const ProbeTraces empty = run_scene(0);
  const MaterialProperties lossless{"m", 9.0, 0.0, 0.0, 1000.0};
  auto response_peak = [&](int disk_i) {
    const ProbeTraces with = run_scene(disk_i);
    RadarDataset ds = synthetic_dataset({cell_center(g, src)}, 1400, g.dt, pulse);
    ds.kind = DatasetKind::tumor_response;
    for (long k = 0; k < 1400; ++k)
      ds.trace(0, 0)[k] = with.ez[0][k] - empty.ez[0][k];
    const RadarDataset eq = equalize(ds, lossless, 1.0);  // 0.5 per leg, two legs
    return peak_abs(eq.trace(0, 0));
  };

  const double p1 = response_peak(60);   // 40 cells = 50 mm
  const double p2 = response_peak(100);  // 80 cells = 100 mm
  CHECK(std::fabs(p2 / p1 - 1.0) < 0.15);
}

TEST_CASE("depth sweep of a zero-contrast tumor sits at the floor") {
  Scenario s;
  s.phantom.breast_radius = 25e-3;
  s.phantom.skin_thickness = 2e-3;
  s.phantom.tumor = TumorSpec{8e-3, 8e-3, 90.0};
  s.phantom.materials = {"matching_medium", "matching_medium", "matching_medium",
                         "matching_medium"};
  s.n_elements = 2;
  s.standoff = 4e-3;
  s.pulse = PulseSpec{1.0, 1.2e-9, 400e-12, PulseShape::gaussian_derivative};
  s.dx = 1e-3;
  s.f_max = 2e9;

  const auto curve = depth_sweep(s, {8e-3, 16e-3}, TissueCatalog::defaults());
  REQUIRE(curve.size() == 2);
  for (const auto& [depth, db] : curve) CHECK(db <= -80.0);
}

TEST_CASE("das centroid is shift-equivariant in a homogeneous scene") {
  const TissueCatalog cat = TissueCatalog::defaults();
  Scenario s;
  s.phantom.breast_radius = 30e-3;
  s.phantom.skin_thickness = 2e-3;
  s.phantom.tumor = TumorSpec{8e-3, 10e-3, 90.0};
  s.phantom.materials.background = "matching_medium";
  s.phantom.materials.skin = "matching_medium";
  s.phantom.materials.fat = "matching_medium";
  s.n_elements = 6;
  s.standoff = 4e-3;
  s.pulse = kPulse400;
  s.dx = 1e-3;
  s.f_max = 2e9;

  const Vec2 shift{3e-3, -2e-3};
  Scenario shifted = s;
  {
    // Re-express "tumor center + shift" in depth/angle form.
    const double rho = s.phantom.breast_radius - s.phantom.tumor->depth - 4e-3;
    const Vec2 c1{0.0, rho};
    const Vec2 c2 = c1 + shift;
    shifted.phantom.tumor->depth = s.phantom.breast_radius - 4e-3 - norm(c2);
    shifted.phantom.tumor->angle_deg = std::atan2(c2.y, c2.x) * 180.0 / 3.14159265358979323846;
  }

  auto centroid_of = [&](const Scenario& sc, Vec2 grid_shift) {
    const RealizedScenario r = realize(sc, cat);
    const DatasetPair pair = acquire_pair(sc, cat);
    const RadarDataset resp = calibrate(pair.with_tumor, pair.calibration);
    const MaterialProperties& mm = cat.lookup_tissue("matching_medium", 6e9);
    const double v = c0 / std::sqrt(mm.eps_r);
    ImageGrid recon;
    recon.dx = 1e-3;
    recon.nx = recon.ny = 50;
    recon.x0 = r.phantom.spec().center.x - 25e-3 + grid_shift.x;
    recon.y0 = r.phantom.spec().center.y - 25e-3 + grid_shift.y;
    return detect(das_image(resp, recon, v), -1.5).centroid;
  };

  const Vec2 c1 = centroid_of(s, {0, 0});
  const Vec2 c2 = centroid_of(shifted, shift);
  CHECK(std::fabs(c2.x - shift.x - c1.x) <= 1e-3);
  CHECK(std::fabs(c2.y - shift.y - c1.y) <= 1e-3);
}

TEST_SUITE_END();

#pragma once

#include <utility>
#include <vector>

namespace mwave {

// Rectangular patch sized with the transmission-line model: width from the
// half-wavelength rule, Hammerstad effective permittivity and length
// extension, ground plane 6h beyond the patch on each axis.
struct PatchDesign {
  double f0 = 0.0;       // target resonant frequency, Hz
  double eps_r = 1.0;    // substrate relative permittivity
  double h = 0.0;        // substrate thickness, m
  double width = 0.0;    // patch width W, m
  double eps_eff = 1.0;  // effective dielectric constant
  double delta_l = 0.0;  // fringing length extension, m
  double l_eff = 0.0;    // effective resonant length, m
  double length = 0.0;   // physical patch length L, m
  double ground_l = 0.0; // ground plane length, m
  double ground_w = 0.0; // ground plane width, m
};

PatchDesign design_rect_patch(double f0_hz, double eps_r, double h_m);

// Resonant frequency of a patch cavity of physical length L with fringing
// extension dL in an effective permittivity; inverse of the length steps of
// design_rect_patch.
double cavity_resonance(double length_m, double delta_l_m, double eps_eff);

struct MonopoleDesign {
  double f_low = 0.0;   // lowest operating frequency, Hz
  double eps_r = 1.0;   // permittivity of the surrounding medium
  double length = 0.0;  // antenna length L2, m
};

// Printed-monopole length rule L2 = 6.2e7 / (f_L * sqrt(eps_r)), in meters.
double monopole_length(double f_low_hz, double eps_r);
MonopoleDesign design_monopole(double f_low_hz, double eps_r);

// VSWR from a return-loss sample. s11_db == 0 means total reflection and
// yields +infinity (all power reflected, no finite standing-wave ratio).
double s11_db_to_vswr(double s11_db);

struct S11Curve {
  // (frequency Hz, S11 dB), strictly increasing in frequency, S11 <= 0.
  std::vector<std::pair<double, double>> points;

  void validate() const;
};

struct Band {
  double f_low = 0.0;
  double f_high = 0.0;
};

// Maximal frequency intervals where S11 <= threshold_db, with crossing points
// found by linear interpolation between adjacent samples.
std::vector<Band> bandwidth_at_threshold(const S11Curve& curve, double threshold_db);

}  // namespace mwave

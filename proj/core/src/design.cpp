#include "mwave/design.hpp"

#include <cmath>
#include <limits>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"

namespace mwave {

using constants::c0;

PatchDesign design_rect_patch(double f0_hz, double eps_r, double h_m) {
  if (!(f0_hz > 0.0)) throw InvariantViolation("design_rect_patch: f0 must be > 0");
  if (!(eps_r >= 1.0)) throw InvariantViolation("design_rect_patch: eps_r must be >= 1");
  if (!(h_m > 0.0)) throw InvariantViolation("design_rect_patch: h must be > 0");

  PatchDesign d;
  d.f0 = f0_hz;
  d.eps_r = eps_r;
  d.h = h_m;

  d.width = (c0 / (2.0 * f0_hz)) * std::sqrt(2.0 / (eps_r + 1.0));
  d.eps_eff = 0.5 * (eps_r + 1.0) +
              0.5 * (eps_r - 1.0) / std::sqrt(1.0 + 12.0 * h_m / d.width);

  const double w_h = d.width / h_m;
  d.delta_l = 0.412 * h_m * ((d.eps_eff + 0.3) * (w_h + 0.264)) /
              ((d.eps_eff - 0.258) * (w_h + 0.8));
  d.l_eff = c0 / (2.0 * f0_hz * std::sqrt(d.eps_eff));
  d.length = d.l_eff - 2.0 * d.delta_l;

  if (!(d.length > 0.0))
    throw NonPhysical("design_rect_patch: patch length <= 0 (substrate too thick for f0)");

  d.ground_l = 6.0 * h_m + d.length;
  d.ground_w = 6.0 * h_m + d.width;
  return d;
}

double cavity_resonance(double length_m, double delta_l_m, double eps_eff) {
  if (!(length_m > 0.0)) throw InvariantViolation("cavity_resonance: L must be > 0");
  if (!(delta_l_m >= 0.0)) throw InvariantViolation("cavity_resonance: dL must be >= 0");
  if (!(eps_eff >= 1.0)) throw InvariantViolation("cavity_resonance: eps_eff must be >= 1");
  return c0 / (2.0 * (length_m + 2.0 * delta_l_m) * std::sqrt(eps_eff));
}

double monopole_length(double f_low_hz, double eps_r) {
  if (!(f_low_hz > 0.0)) throw InvariantViolation("monopole_length: f_L must be > 0");
  if (!(eps_r >= 1.0)) throw InvariantViolation("monopole_length: eps_r must be >= 1");
  return 6.2e7 / (f_low_hz * std::sqrt(eps_r));
}

MonopoleDesign design_monopole(double f_low_hz, double eps_r) {
  return MonopoleDesign{f_low_hz, eps_r, monopole_length(f_low_hz, eps_r)};
}

double s11_db_to_vswr(double s11_db) {
  if (!(s11_db <= 0.0)) throw InvariantViolation("s11_db_to_vswr: S11 must be <= 0 dB");
  if (s11_db == 0.0) return std::numeric_limits<double>::infinity();  // total reflection
  const double gamma = std::pow(10.0, s11_db / 20.0);
  return (1.0 + gamma) / (1.0 - gamma);
}

void S11Curve::validate() const {
  for (size_t k = 0; k < points.size(); ++k) {
    if (!(points[k].second <= 0.0))
      throw InvariantViolation("S11Curve: S11 must be <= 0 dB at every sample");
    if (k > 0 && !(points[k].first > points[k - 1].first))
      throw InvariantViolation("S11Curve: frequencies must be strictly increasing");
  }
}

std::vector<Band> bandwidth_at_threshold(const S11Curve& curve, double threshold_db) {
  curve.validate();
  if (curve.points.size() < 2)
    throw InvariantViolation("bandwidth_at_threshold: need at least 2 samples");
  if (!(threshold_db < 0.0))
    throw InvariantViolation("bandwidth_at_threshold: threshold must be < 0 dB");

  const auto& p = curve.points;
  std::vector<Band> bands;
  bool inside = p[0].second <= threshold_db;
  double start = p[0].first;

  auto cross = [threshold_db](const std::pair<double, double>& a,
                              const std::pair<double, double>& b) {
    return a.first + (threshold_db - a.second) * (b.first - a.first) / (b.second - a.second);
  };

  for (size_t k = 0; k + 1 < p.size(); ++k) {
    const bool next_inside = p[k + 1].second <= threshold_db;
    if (!inside && next_inside) {
      start = (p[k + 1].second < threshold_db) ? cross(p[k], p[k + 1]) : p[k + 1].first;
      inside = true;
    } else if (inside && !next_inside) {
      const double stop = (p[k].second < threshold_db) ? cross(p[k], p[k + 1]) : p[k].first;
      bands.push_back({start, stop});
      inside = false;
    }
  }
  if (inside) bands.push_back({start, p.back().first});
  return bands;
}

}  // namespace mwave

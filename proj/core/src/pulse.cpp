#include "mwave/pulse.hpp"

#include <cmath>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"

namespace mwave {

double PulseSpec::tau() const { return fwhm / constants::fwhm_sigma_ratio; }

void PulseSpec::validate() const {
  if (!(fwhm > 0.0)) throw InvariantViolation("pulse: fwhm must be > 0");
  if (!(t0 >= 3.0 * fwhm * (1.0 - 1e-12)))
    throw InvariantViolation("pulse: t0 must be >= 3*fwhm (quiet start)");
  if (!std::isfinite(amplitude)) throw InvariantViolation("pulse: amplitude must be finite");
}

double PulseSpec::center_frequency() const {
  return 1.0 / (2.0 * 3.14159265358979323846 * tau());
}

double pulse_value(const PulseSpec& p, double t) {
  const double x = (t - p.t0) / p.tau();
  switch (p.shape) {
    case PulseShape::gaussian:
      return p.amplitude * std::exp(-0.5 * x * x);
    case PulseShape::gaussian_derivative:
      // -x * exp(1/2 - x^2/2): unit peak magnitude at x = -1.
      return -p.amplitude * x * std::exp(0.5 - 0.5 * x * x);
  }
  return 0.0;
}

}  // namespace mwave

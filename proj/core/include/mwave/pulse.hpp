#pragma once

namespace mwave {

enum class PulseShape { gaussian, gaussian_derivative };

// Excitation waveform. The Gaussian is A*exp(-(t-t0)^2/(2 tau^2)) with
// tau = fwhm / (2 sqrt(2 ln 2)); the derivative variant is its first
// derivative normalized to peak magnitude A (no DC content, which lossy
// media handle better).
struct PulseSpec {
  double amplitude = 1.0;  // V
  double t0 = 600e-12;     // delay, s; quiet start requires t0 >= 3*fwhm
  double fwhm = 200e-12;   // full width at half maximum, s
  PulseShape shape = PulseShape::gaussian;

  double tau() const;
  void validate() const;

  // Peak frequency of the magnitude spectrum: 0 for the plain Gaussian is
  // not useful, so this reports 1/(2 pi tau) for both shapes (the spectral
  // peak of the derivative, and the -3 dB-ish scale of the Gaussian).
  double center_frequency() const;

  friend bool operator==(const PulseSpec&, const PulseSpec&) = default;
};

double pulse_value(const PulseSpec& p, double t);

}  // namespace mwave

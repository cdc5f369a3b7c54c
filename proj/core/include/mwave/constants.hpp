#pragma once

#include <cmath>

namespace mwave::constants {

inline constexpr double c0 = 299792458.0;            // vacuum speed of light, m/s
inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846;  // H/m
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);           // F/m
inline constexpr double eta0 = mu0 * c0;             // vacuum wave impedance, ohm

// One neper expressed in dB: 20*log10(e).
inline const double np_to_db = 20.0 / std::log(10.0);

// FWHM of exp(-t^2 / (2 tau^2)) is fwhm_sigma_ratio * tau.
inline const double fwhm_sigma_ratio = 2.0 * std::sqrt(2.0 * std::log(2.0));

}  // namespace mwave::constants

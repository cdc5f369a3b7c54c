#include "mwave/materials.hpp"

#include <cmath>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"

namespace mwave {

void MaterialProperties::validate() const {
  if (!(eps_r > 0.0) || !std::isfinite(eps_r))
    throw InvariantViolation("material '" + name + "': eps_r must be positive and finite");
  if (name != "vacuum" && eps_r < 1.0)
    throw InvariantViolation("material '" + name + "': eps_r must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw InvariantViolation("material '" + name + "': sigma must be >= 0 and finite");
  if (atten_db_per_cm && (!(*atten_db_per_cm >= 0.0) || !std::isfinite(*atten_db_per_cm)))
    throw InvariantViolation("material '" + name + "': atten_db_per_cm must be >= 0 and finite");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw InvariantViolation("material '" + name + "': rho must be positive");
}

double attenuation_from_conductivity(const MaterialProperties& props) {
  if (props.sigma == 0.0) return 0.0;
  const double eta = constants::eta0 / std::sqrt(props.eps_r);
  const double alpha_np_per_m = 0.5 * props.sigma * eta;
  return alpha_np_per_m * constants::np_to_db / 100.0;
}

double conductivity_for_attenuation(double eps_r, double atten_db_per_cm) {
  const double eta = constants::eta0 / std::sqrt(eps_r);
  const double alpha_np_per_m = atten_db_per_cm * 100.0 / constants::np_to_db;
  return 2.0 * alpha_np_per_m / eta;
}

double effective_attenuation_db_per_cm(const MaterialProperties& props) {
  if (props.atten_db_per_cm) return *props.atten_db_per_cm;
  return attenuation_from_conductivity(props);
}

TissueCatalog TissueCatalog::defaults() {
  // eps_r and sigma for fat and tumor are the 6 GHz tissue measurements;
  // the matching medium and skin carry directly measured phantom attenuations
  // (0.8 and 16 dB/cm), so their conductivities are back-computed to
  // reproduce those attenuations in simulation. The tumor phantom has no
  // measured attenuation; fat carries both a measured attenuation (0.8) and
  // a conductivity (0.4 => ~2.1 dB/cm), and the equalization stage prefers
  // the measured number.
  TissueCatalog cat;
  cat.entries_ = {
      MaterialProperties{"vacuum", 1.0, 0.0, 0.0, 1000.0},
      MaterialProperties{"matching_medium", 10.0, conductivity_for_attenuation(10.0, 0.8), 0.8,
                         1000.0},
      MaterialProperties{"fat", 9.5, 0.4, 0.8, 1000.0},
      MaterialProperties{"skin", 30.0, conductivity_for_attenuation(30.0, 16.0), 16.0, 1000.0},
      MaterialProperties{"tumor", 46.0, 3.4, std::nullopt, 1000.0},
  };
  return cat;
}

const MaterialProperties& TissueCatalog::lookup_tissue(const std::string& name,
                                                       double freq_hz) const {
  if (!(freq_hz > 0.0)) throw InvariantViolation("lookup_tissue: frequency must be > 0");
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw UnknownTissue(name);
}

bool TissueCatalog::contains(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

MaterialProperties& TissueCatalog::entry(const std::string& name) {
  for (auto& e : entries_)
    if (e.name == name) return e;
  throw UnknownTissue(name);
}

void TissueCatalog::validate() const {
  for (const auto& e : entries_) e.validate();
}

}  // namespace mwave

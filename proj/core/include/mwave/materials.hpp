#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mwave {

// Electromagnetic bulk properties of one tissue. Values are single-frequency
// constants (the catalog tabulates them at 6 GHz and treats them as
// frequency-independent; no dispersion model).
struct MaterialProperties {
  std::string name;
  double eps_r = 1.0;                        // relative permittivity, >= 1 for tissues
  double sigma = 0.0;                        // conductivity, S/m
  std::optional<double> atten_db_per_cm;     // one-way amplitude attenuation, when
                                             // a directly measured value exists
  double rho = 1000.0;                       // mass density, kg/m^3

  void validate() const;
};

// Low-loss plane-wave attenuation sigma*eta/2, converted to dB/cm.
// Exact zero for sigma == 0.
double attenuation_from_conductivity(const MaterialProperties& props);

// Inverse of attenuation_from_conductivity: the conductivity that produces a
// given one-way attenuation in a medium of permittivity eps_r.
double conductivity_for_attenuation(double eps_r, double atten_db_per_cm);

// Measured attenuation when present, otherwise the value implied by sigma.
double effective_attenuation_db_per_cm(const MaterialProperties& props);

class TissueCatalog {
 public:
  // Catalog with the built-in five tissues: vacuum, matching_medium, fat,
  // skin, tumor.
  static TissueCatalog defaults();

  // The frequency argument is validated (> 0) but does not select between
  // entries: the catalog is a constant table.
  const MaterialProperties& lookup_tissue(const std::string& name, double freq_hz) const;

  bool contains(const std::string& name) const;
  MaterialProperties& entry(const std::string& name);  // for config overrides
  const std::vector<MaterialProperties>& entries() const { return entries_; }

  void validate() const;

 private:
  std::vector<MaterialProperties> entries_;
};

}  // namespace mwave

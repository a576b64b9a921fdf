#include "dilatsim/mapping.hpp"

#include "dilatsim/errors.hpp"
#include "dilatsim/units.hpp"

#include <cmath>
#include <sstream>

namespace dilatsim {

void UnitSystem::validate() const {
  if (!(length > 0.0 && energy > 0.0 && time > 0.0 && base_mass > 0.0))
    throw ConfigError("unit conversion factors must be strictly positive");
}

UnitSystem UnitSystem::si() {
  UnitSystem u;
  u.length = 1.0 / constants::bohr_radius_m;
  u.energy = 1.0 / constants::hartree_J;
  u.time = 1.0 / constants::atomic_time_s;
  u.base_mass = 1.0 / constants::electron_mass_kg;
  return u;
}

double DilatationMap::coordinate_factor() const { return std::exp(-r); }

DilatationMap derive_dilatation(double mass_ratio, double charge) {
  if (!(mass_ratio > 0.0))
    throw ConfigError("mass_ratio must be positive, got " + std::to_string(mass_ratio));
  if (!(charge > 0.0))
    throw ConfigError("charge must be positive, got " + std::to_string(charge));

  DilatationMap map;
  map.mass_ratio = mass_ratio;
  map.charge = charge;
  map.r = std::log(charge * charge * mass_ratio);
  map.lambda = std::exp(map.r) * charge * charge;
  map.effective_mass = std::exp(-map.r) * charge * charge * mass_ratio;
  return map;
}

double scale_time(double t, const DilatationMap& map) {
  if (t < 0.0) throw ConfigError("time must be nonnegative, got " + std::to_string(t));
  return t / map.lambda;
}

ExternalPotential scale_external_potential(const ExternalPotential& v_ext,
                                           const DilatationMap& map) {
  return v_ext.scaled(map.r, map.lambda);
}

double scale_softening(double softening_eg, const DilatationMap& map) {
  return softening_eg * map.coordinate_factor();
}

const std::vector<IonSpecies>& known_species() {
  static const std::vector<IonSpecies> table = {
      {"Ca40+", constants::ca40_ion_mass_ratio},
  };
  return table;
}

double species_mass_ratio(const std::string& name) {
  for (const IonSpecies& s : known_species())
    if (s.name == name) return s.mass_ratio;
  std::ostringstream msg;
  msg << "unknown ion species '" << name << "'; known species:";
  for (const IonSpecies& s : known_species()) msg << " " << s.name;
  throw ConfigError(msg.str());
}

}  // namespace dilatsim

#pragma once

#include "dilatsim/potential.hpp"

#include <string>
#include <vector>

namespace dilatsim {

// Connection between the electron-gas system and its trapped-ion simulator.
// The dilatation parameter is fixed by requiring the effective mass
// exp(-r) Q^2 m_ion to equal the electron mass, which gives
//   exp(r) = Q^2 * mass_ratio,
// and a single dimensionless factor
//   lambda = exp(r) Q^2 = Q^4 * mass_ratio
// that rescales both energies (spectrum_s = lambda * spectrum_eg) and time
// (t_simulator = t_electron / lambda).
struct DilatationMap {
  double r = 0.0;           // dilatation parameter
  double charge = 1.0;      // ionization degree Q
  double mass_ratio = 1.0;  // m_ion / m_e
  double lambda = 1.0;      // exp(r) Q^2
  double effective_mass = 1.0;  // exp(-r) Q^2 m_ion, in electron masses

  double coordinate_factor() const;  // exp(-r): ion coordinates vs electron
};

// Derives the map from the mass ratio and ionization degree. Both must be
// strictly positive; Q may be non-integer for synthetic scenarios.
DilatationMap derive_dilatation(double mass_ratio, double charge);

// t >= 0 in any time unit; returns t / lambda in the same unit.
double scale_time(double t, const DilatationMap& map);

// V_s(q) = Q^2 exp(r) V_ext(exp(r) q). A hard wall of width w comes back
// with width exp(-r) w.
ExternalPotential scale_external_potential(const ExternalPotential& v_ext,
                                           const DilatationMap& map);

// Soft-core kernels are not homogeneous, so mapping a softened system
// exactly requires relating the two softening parameters:
//   a_electron = exp(r) * a_ion.
// Given the electron-side softening, this returns the ion-side value.
double scale_softening(double softening_eg, const DilatationMap& map);

// Ion species with stored mass ratios for the CLI.
struct IonSpecies {
  std::string name;
  double mass_ratio;
};

const std::vector<IonSpecies>& known_species();
double species_mass_ratio(const std::string& name);  // throws ConfigError

}  // namespace dilatsim

#pragma once

#include <string>

namespace dilatsim {

// Everything internal runs in Hartree atomic units (hbar = m_e = e = 1,
// Coulomb constant 1). A UnitSystem holds the multiplicative factors that
// convert external quantities into atomic units; it only appears at the
// CLI boundary.
struct UnitSystem {
  double length = 1.0;     // external length unit, in Bohr radii
  double energy = 1.0;     // external energy unit, in Hartree
  double time = 1.0;       // external time unit, in atomic time units
  double base_mass = 1.0;  // external mass unit, in electron masses

  double to_au_length(double v) const { return v * length; }
  double from_au_length(double v) const { return v / length; }
  double to_au_energy(double v) const { return v * energy; }
  double from_au_energy(double v) const { return v / energy; }
  double to_au_time(double v) const { return v * time; }
  double from_au_time(double v) const { return v / time; }
  double to_au_mass(double v) const { return v * base_mass; }
  double from_au_mass(double v) const { return v / base_mass; }

  // Throws ConfigError unless every factor is strictly positive.
  void validate() const;

  static UnitSystem atomic() { return {}; }
  static UnitSystem si();
};

namespace constants {

// CODATA 2018 conversion factors.
inline constexpr double bohr_radius_m = 5.29177210903e-11;
inline constexpr double hartree_J = 4.3597447222071e-18;
inline constexpr double atomic_time_s = 2.4188843265857e-17;
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double electron_masses_per_u = 1822.888486209;

// Mass of a 40Ca+ ion in electron masses: 39.9626 u of the neutral atom
// converted with 1822.888 m_e/u, minus the one missing electron. Rounded
// to the integer used throughout.
inline constexpr double ca40_ion_mass_ratio = 72846.0;

}  // namespace constants

}  // namespace dilatsim

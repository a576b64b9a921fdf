#pragma once

#include "dilatsim/evolve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dilatsim {

// Statevector simulation of phase estimation on the simulator propagator
// exp(-i H_s t_tilde). Controlled powers are applied per eigencomponent as
// exact phase exponentiation, followed by the inverse quantum Fourier
// transform over the ancilla register.
//
// Phase convention: exp(-i H_s t_tilde)|v> = exp(i 2 pi phi_v)|v> with
//   phi_v = (-E_v * t_tilde / 2 pi) mod 1.
struct QpeConfig {
  int bits = 8;           // ancilla count n, 1..16
  double t_tilde = 0.1;   // evolution time of one controlled-U
  const EigenSolution* eigensystem = nullptr;
  // Target: either an eigenstate index (exact expansion) or a state to be
  // expanded in the eigensystem (completeness residual must stay < 1e-8).
  std::optional<int> eigenstate_index;
  std::optional<WaveFunction> target;
};

struct QpeComponent {
  double energy = 0.0;  // simulator-side eigenvalue
  double weight = 0.0;  // |c_v|^2
  double phase = 0.0;   // phi_v in [0, 1)
};

struct QpeResult {
  int bits = 0;
  double t_tilde = 0.0;
  Eigen::VectorXd distribution;  // P(M), M = 0 .. 2^n - 1
  long m_star = 0;               // maximum-likelihood estimate
  double phase_estimate = 0.0;   // m_star / 2^n
  std::vector<QpeComponent> components;
};

QpeResult qpe_run(const QpeConfig& config);

// Ancilla distribution of a single eigencomponent with eigenphase `phase`:
// |IQFT of the phase ramp|^2.
Eigen::VectorXd qpe_distribution_for_phase(double phase, int bits);

// Inverse quantum Fourier transform with the phase-estimation convention:
// a phase ramp exp(i 2 pi j M0 / len) maps to basis state M0. Requires a
// power-of-two length. qft is its inverse.
Eigen::VectorXcd iqft(const Eigen::VectorXcd& amplitudes);
Eigen::VectorXcd qft(const Eigen::VectorXcd& amplitudes);

struct EnergyEstimate {
  long m = 0;
  double probability = 0.0;
  double phase = 0.0;
  double energy_simulator = 0.0;  // principal branch in [0, 2 pi / t_tilde)
  double energy_electron = 0.0;   // energy_simulator / lambda
  std::vector<double> alias_branches;  // simulator-side, when ambiguous
};

struct EnergyRecovery {
  std::vector<EnergyEstimate> estimates;
  bool ambiguous = false;
  std::string warning;
};

// Converts distribution peaks back to energies: E_s = -2 pi phi / t_tilde
// modulo the 2 pi / t_tilde aliasing window, E_eg = E_s / lambda. When
// `max_energy` (simulator side) admits several branches the estimates carry
// them and the recovery is flagged ambiguous.
EnergyRecovery phases_to_energies(const QpeResult& result, double t_tilde,
                                  const DilatationMap& map,
                                  std::optional<double> max_energy = std::nullopt);

// Deterministic measurement sampling (inverse-CDF with a seeded mt19937_64);
// returns counts per M.
std::vector<long> sample_measurements(const QpeResult& result, long shots,
                                      std::uint64_t seed);

}  // namespace dilatsim

#pragma once

#include "dilatsim/grid.hpp"
#include "dilatsim/potential.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace dilatsim {

// Full eigensolves go through a dense matrix; this caps its size.
inline constexpr long kDenseCap = 4096;

enum class Boundary { periodic, masked_wall };

// Few-particle system on a coordinate grid: N particles in d dimensions,
// pairwise soft-core Coulomb repulsion and an optional external potential.
// The grid carries one axis per particle coordinate, so N*d <= 4.
struct SystemSpec {
  int particles = 1;             // N
  int dimensions = 1;            // d per particle
  double mass = 1.0;             // a.u.
  double pair_coefficient = 0.0; // e^2 for electrons, Q^2 e^2 for ions
  double softening = 0.5;        // soft-core length a > 0
  ExternalPotential external = ExternalPotential::none();
  Boundary boundary = Boundary::periodic;

  int grid_rank() const { return particles * dimensions; }
  void validate() const;  // throws ConfigError on violated invariants
};

class WaveFunction {
 public:
  WaveFunction() = default;
  WaveFunction(GridSpec grid, Eigen::VectorXcd amplitudes);

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }

  double norm_squared() const;
  void normalize();  // throws NumericalError on a zero state

  // Position expectation along one grid axis.
  double position_expectation(int axis) const;
  double position_second_moment(int axis) const;
  // Momentum expectations along one grid axis (spectral).
  double momentum_expectation(int axis) const;
  double momentum_second_moment(int axis) const;

 private:
  GridSpec grid_;
  Eigen::VectorXcd amp_;
};

// Hamiltonian split into a momentum-space kinetic diagonal and a
// position-space potential diagonal. The dense realization is built on
// demand and only below kDenseCap.
class HamiltonianOperator {
 public:
  HamiltonianOperator(SystemSpec spec, GridSpec grid);

  const SystemSpec& spec() const { return spec_; }
  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXd& kinetic_diagonal() const { return kinetic_; }
  const Eigen::VectorXd& potential_diagonal() const { return potential_; }

  // Apply H to raw node amplitudes (spectral kinetic + diagonal potential).
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;

  double energy_expectation(const WaveFunction& psi) const;

  // Dense real-symmetric matrix acting on node amplitudes. Built on first
  // use; construction is single-threaded, the built matrix is immutable.
  const Eigen::MatrixXd& dense() const;
  bool dense_available() const { return grid_.size() <= kDenseCap; }

 private:
  SystemSpec spec_;
  GridSpec grid_;
  Eigen::VectorXd kinetic_;    // momentum-space diagonal
  Eigen::VectorXd potential_;  // position-space diagonal
  mutable std::optional<Eigen::MatrixXd> dense_;
};

HamiltonianOperator build_hamiltonian(const SystemSpec& spec, const GridSpec& grid);

// Initial-state preparation.
struct GaussianState {
  Eigen::VectorXd center;    // one entry per grid axis
  Eigen::VectorXd width;     // position-space std dev per axis
  Eigen::VectorXd momentum;  // carrier wavenumber per axis
};

WaveFunction initial_gaussian(const GaussianState& g, const GridSpec& grid);
// Eigenstate and superposition preparation need the dense spectrum.
WaveFunction initial_eigenstate(const HamiltonianOperator& h, int index);
WaveFunction initial_superposition(const HamiltonianOperator& h,
                                   const std::vector<int>& indices,
                                   const std::vector<std::complex<double>>& weights);

// Particle relabeling i <-> j as a permutation of grid indices. Requires
// all particles to share identical axes.
std::vector<long> swap_permutation(const SystemSpec& spec, const GridSpec& grid,
                                   int pi, int pj);

// Projects onto the antisymmetric sector under exchange of the two
// particles (N = 2 only) and renormalizes.
WaveFunction antisymmetrize(const SystemSpec& spec, const WaveFunction& psi);

}  // namespace dilatsim

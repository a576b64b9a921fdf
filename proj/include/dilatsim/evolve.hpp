#pragma once

#include "dilatsim/dilatation.hpp"
#include "dilatsim/mapping.hpp"
#include "dilatsim/model.hpp"

#include <vector>

namespace dilatsim {

struct PropagationPlan {
  enum class Method { split_operator, dense_exponential };

  double dt = 1e-3;
  long n_steps = 0;
  Method method = Method::split_operator;
  long sample_stride = 1;  // steps between recorded samples

  // n_steps * dt == duration exactly (dt is adjusted downward).
  static PropagationPlan for_duration(double duration, double dt,
                                      Method method = Method::split_operator,
                                      long sample_stride = 1);

  // dt > 0 and, for the split-operator method, the anti-aliasing bound
  // dt * max kinetic phase advance < pi.
  void validate(const HamiltonianOperator& h) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<WaveFunction> states;
  std::vector<double> norms;     // per sample
  std::vector<double> energies;  // per sample
  WaveFunction final_state;

  double sample_dt() const;
  double max_norm_drift() const;
  double max_energy_drift() const;  // relative to the initial energy
};

// Strang-split spectral propagation exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2),
// or the dense-exponential oracle exp(-iHt) = V exp(-iEt) V^T evaluated
// through the eigendecomposition. Sample 0 is the initial state.
Trajectory propagate(const WaveFunction& psi0, const HamiltonianOperator& h,
                     const PropagationPlan& plan);

class EigenSolution {
 public:
  EigenSolution(GridSpec grid, Eigen::VectorXd values, Eigen::MatrixXd vectors,
                double max_residual);

  int count() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  // Columns are unit-2-norm node-amplitude vectors.
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  const GridSpec& grid() const { return grid_; }
  double max_residual() const { return max_residual_; }

  WaveFunction eigenstate(int i) const;
  // Expansion coefficients c_v = <v|psi> with grid quadrature weights.
  Eigen::VectorXcd expand(const WaveFunction& psi) const;

 private:
  GridSpec grid_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  double max_residual_;
};

// k lowest eigenpairs of the dense realization; every residual
// ||Hv - Ev|| is checked against 1e-8.
EigenSolution eigensolve(const HamiltonianOperator& h, int k);

// Ion-side system that simulates `eg` under the map: mass and pair
// coefficient scaled up, softening and grid contracted by exp(-r),
// external potential scaled pointwise.
SystemSpec simulator_system(const SystemSpec& eg, const DilatationMap& map);
GridSpec simulator_grid(const GridSpec& eg_grid, const DilatationMap& map);

struct PropagatorIdentityReport {
  double t = 0.0;
  double t_tilde = 0.0;
  double fidelity = 0.0;
  double max_density_residual = 0.0;
  WaveFunction electron_side;
  WaveFunction simulator_side;  // mapped back to the electron grid
};

// Checks that evolving under the electron-gas Hamiltonian for t equals
// S(-r) . evolve under the simulator Hamiltonian for t/lambda . S(r).
PropagatorIdentityReport verify_propagator_identity(
    const WaveFunction& psi0, double t, const SystemSpec& eg_spec,
    const DilatationMap& map,
    PropagationPlan::Method method = PropagationPlan::Method::dense_exponential,
    double dt = 1e-3);

}  // namespace dilatsim

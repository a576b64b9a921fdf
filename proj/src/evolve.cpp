#include "dilatsim/evolve.hpp"

#include "dilatsim/errors.hpp"
#include "dilatsim/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>

namespace dilatsim {

using namespace std::complex_literals;

PropagationPlan PropagationPlan::for_duration(double duration, double dt,
                                              Method method, long sample_stride) {
  if (!(duration > 0.0)) throw ConfigError("propagation duration must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  PropagationPlan plan;
  plan.n_steps = static_cast<long>(std::ceil(duration / dt - 1e-12));
  plan.dt = duration / plan.n_steps;
  plan.method = method;
  plan.sample_stride = sample_stride;
  return plan;
}

void PropagationPlan::validate(const HamiltonianOperator& h) const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (n_steps < 1) throw ConfigError("plan needs at least one step");
  if (sample_stride < 1) throw ConfigError("sample stride must be >= 1");
  if (method == Method::split_operator) {
    const double max_kin = h.kinetic_diagonal().maxCoeff();
    if (dt * max_kin >= std::numbers::pi)
      throw ConfigError("anti-aliasing bound violated: dt * max kinetic = " +
                        std::to_string(dt * max_kin) + " >= pi; reduce dt");
  }
}

double Trajectory::sample_dt() const {
  return times.size() > 1 ? times[1] - times[0] : 0.0;
}

double Trajectory::max_norm_drift() const {
  double drift = 0.0;
  for (double n : norms) drift = std::max(drift, std::abs(n - 1.0));
  return drift;
}

double Trajectory::max_energy_drift() const {
  if (energies.empty()) return 0.0;
  const double e0 = energies.front();
  const double scale = std::max(std::abs(e0), 1e-300);
  double drift = 0.0;
  for (double e : energies) drift = std::max(drift, std::abs(e - e0) / scale);
  return drift;
}

namespace {

void log_sample(Trajectory& traj, const HamiltonianOperator& h, double t,
                const WaveFunction& state) {
  traj.times.push_back(t);
  traj.states.push_back(state);
  traj.norms.push_back(state.norm_squared());
  traj.energies.push_back(h.energy_expectation(state));
}

Trajectory propagate_split(const WaveFunction& psi0, const HamiltonianOperator& h,
                           const PropagationPlan& plan) {
  const GridSpec& g = h.grid();
  Eigen::VectorXcd half_v(g.size()), full_t(g.size());
  for (long j = 0; j < g.size(); ++j) {
    half_v[j] = std::polar(1.0, -0.5 * plan.dt * h.potential_diagonal()[j]);
    full_t[j] = std::polar(1.0, -plan.dt * h.kinetic_diagonal()[j]);
  }

  Trajectory traj;
  WaveFunction state = psi0;
  log_sample(traj, h, 0.0, state);
  Eigen::VectorXcd& amp = state.amplitudes();
  for (long step = 1; step <= plan.n_steps; ++step) {
    amp.array() *= half_v.array();
    fft_forward(g, amp);
    amp.array() *= full_t.array();
    fft_inverse(g, amp);
    amp.array() *= half_v.array();
    if (step % plan.sample_stride == 0)
      log_sample(traj, h, step * plan.dt, state);
  }
  traj.final_state = state;
  return traj;
}

Trajectory propagate_dense(const WaveFunction& psi0, const HamiltonianOperator& h,
                           const PropagationPlan& plan) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
  if (es.info() != Eigen::Success)
    throw NumericalError("dense eigensolve failed to converge");
  const Eigen::VectorXcd coeffs =
      es.eigenvectors().transpose().cast<std::complex<double>>() * psi0.amplitudes();

  Trajectory traj;
  log_sample(traj, h, 0.0, psi0);
  WaveFunction state = psi0;
  for (long step = plan.sample_stride; step <= plan.n_steps;
       step += plan.sample_stride) {
    const double t = step * plan.dt;
    const Eigen::VectorXcd rotated =
        coeffs.array() * (-1.0i * t * es.eigenvalues().array().cast<std::complex<double>>()).exp();
    state = WaveFunction(h.grid(), es.eigenvectors().cast<std::complex<double>>() * rotated);
    log_sample(traj, h, t, state);
  }
  // Final time may fall between sample strides.
  if (plan.n_steps % plan.sample_stride != 0) {
    const double t = plan.n_steps * plan.dt;
    const Eigen::VectorXcd rotated =
        coeffs.array() * (-1.0i * t * es.eigenvalues().array().cast<std::complex<double>>()).exp();
    state = WaveFunction(h.grid(), es.eigenvectors().cast<std::complex<double>>() * rotated);
  }
  traj.final_state = state;
  return traj;
}

}  // namespace

Trajectory propagate(const WaveFunction& psi0, const HamiltonianOperator& h,
                     const PropagationPlan& plan) {
  if (!(psi0.grid() == h.grid()))
    throw ConfigError("initial state and Hamiltonian grids differ");
  plan.validate(h);
  return plan.method == PropagationPlan::Method::split_operator
             ? propagate_split(psi0, h, plan)
             : propagate_dense(psi0, h, plan);
}

EigenSolution::EigenSolution(GridSpec grid, Eigen::VectorXd values,
                             Eigen::MatrixXd vectors, double max_residual)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      vectors_(std::move(vectors)),
      max_residual_(max_residual) {}

WaveFunction EigenSolution::eigenstate(int i) const {
  if (i < 0 || i >= count())
    throw ConfigError("eigenstate index " + std::to_string(i) +
                      " beyond computed spectrum");
  WaveFunction psi(grid_, (vectors_.col(i) / std::sqrt(grid_.weight()))
                              .cast<std::complex<double>>());
  psi.normalize();
  return psi;
}

Eigen::VectorXcd EigenSolution::expand(const WaveFunction& psi) const {
  return std::sqrt(grid_.weight()) *
         (vectors_.transpose().cast<std::complex<double>>() * psi.amplitudes());
}

EigenSolution eigensolve(const HamiltonianOperator& h, int k) {
  if (k < 1 || k > h.grid().size())
    throw ConfigError("eigenpair count must be in [1, grid size]");
  const Eigen::MatrixXd& dense = h.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success)
    throw NumericalError("dense eigensolve failed to converge");

  Eigen::VectorXd values = es.eigenvalues().head(k);
  Eigen::MatrixXd vectors = es.eigenvectors().leftCols(k);
  double max_residual = 0.0;
  for (int i = 0; i < k; ++i) {
    const double res = (dense * vectors.col(i) - values[i] * vectors.col(i)).norm();
    max_residual = std::max(max_residual, res);
  }
  if (max_residual > 1e-8)
    throw NumericalError("eigenpair residual " + std::to_string(max_residual) +
                         " exceeds 1e-8");
  return EigenSolution(h.grid(), std::move(values), std::move(vectors), max_residual);
}

SystemSpec simulator_system(const SystemSpec& eg, const DilatationMap& map) {
  SystemSpec ion = eg;
  ion.mass = eg.mass * map.mass_ratio;
  ion.pair_coefficient = eg.pair_coefficient * map.charge * map.charge;
  ion.softening = scale_softening(eg.softening, map);
  ion.external = scale_external_potential(eg.external, map);
  return ion;
}

GridSpec simulator_grid(const GridSpec& eg_grid, const DilatationMap& map) {
  return eg_grid.scaled(map.coordinate_factor());
}

PropagatorIdentityReport verify_propagator_identity(const WaveFunction& psi0,
                                                    double t,
                                                    const SystemSpec& eg_spec,
                                                    const DilatationMap& map,
                                                    PropagationPlan::Method method,
                                                    double dt) {
  const GridSpec& eg_grid = psi0.grid();
  const HamiltonianOperator h_eg(eg_spec, eg_grid);
  const SystemSpec ion_spec = simulator_system(eg_spec, map);
  const GridSpec ion_grid = simulator_grid(eg_grid, map);
  const HamiltonianOperator h_ion(ion_spec, ion_grid);

  const double t_tilde = scale_time(t, map);
  PropagationPlan plan_eg = PropagationPlan::for_duration(
      t, method == PropagationPlan::Method::dense_exponential ? t : dt, method);
  plan_eg.sample_stride = plan_eg.n_steps;
  PropagationPlan plan_ion = plan_eg;
  plan_ion.dt = plan_eg.dt / map.lambda;  // same step count on the scaled clock

  const WaveFunction side_a = propagate(psi0, h_eg, plan_eg).final_state;

  const WaveFunction phi0 = apply_dilatation(psi0, map.r, ion_grid);
  const WaveFunction phi_t = propagate(phi0, h_ion, plan_ion).final_state;
  const WaveFunction side_b = apply_dilatation(phi_t, -map.r, eg_grid);

  PropagatorIdentityReport report;
  report.t = t;
  report.t_tilde = t_tilde;
  report.fidelity = fidelity(eg_grid, side_a.amplitudes(), side_b.amplitudes());
  report.max_density_residual =
      (side_a.amplitudes().cwiseAbs2() - side_b.amplitudes().cwiseAbs2())
          .cwiseAbs()
          .maxCoeff();
  report.electron_side = side_a;
  report.simulator_side = side_b;
  return report;
}

}  // namespace dilatsim

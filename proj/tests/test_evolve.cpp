#include "dilatsim/errors.hpp"
#include "dilatsim/evolve.hpp"
#include "dilatsim/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace dilatsim;
using Method = PropagationPlan::Method;

namespace {

SystemSpec harmonic_spec(double omega = 1.0) {
  SystemSpec spec;
  spec.external = ExternalPotential::harmonic_from_omega(omega, 1.0);
  return spec;
}

SystemSpec pair_spec() {
  SystemSpec spec;
  spec.particles = 2;
  spec.pair_coefficient = 1.0;
  spec.softening = 0.5;
  spec.external = ExternalPotential::harmonic(1.0);
  return spec;
}

WaveFunction gaussian1d(const GridSpec& grid, double center, double width,
                        double momentum) {
  GaussianState g;
  g.center = Eigen::VectorXd::Constant(1, center);
  g.width = Eigen::VectorXd::Constant(1, width);
  g.momentum = Eigen::VectorXd::Constant(1, momentum);
  return initial_gaussian(g, grid);
}

WaveFunction gaussian2d(const GridSpec& grid, double c1, double c2, double width) {
  GaussianState g;
  g.center = Eigen::Vector2d(c1, c2);
  g.width = Eigen::Vector2d::Constant(width);
  g.momentum = Eigen::Vector2d::Zero();
  return initial_gaussian(g, grid);
}

double l2_distance(const GridSpec& grid, const WaveFunction& a, const WaveFunction& b) {
  return std::sqrt(norm_squared(grid, (a.amplitudes() - b.amplitudes()).eval()));
}

}  // namespace

TEST_CASE("a stationary state only picks up the eigenphase") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 128, 8.0);
  const HamiltonianOperator h(spec, grid);
  const EigenSolution eig = eigensolve(h, 2);
  const WaveFunction psi0 = eig.eigenstate(1);

  const double t = 2.31;
  const PropagationPlan plan =
      PropagationPlan::for_duration(t, t, Method::dense_exponential);
  const WaveFunction psi_t = propagate(psi0, h, plan).final_state;

  CHECK(fidelity(grid, psi0.amplitudes(), psi_t.amplitudes()) >= 1.0 - 1e-8);
  const Eigen::VectorXcd expected =
      std::polar(1.0, -eig.eigenvalues()[1] * t) * psi0.amplitudes();
  CHECK(l2_distance(grid, psi_t, WaveFunction(grid, expected)) < 1e-8);
}

TEST_CASE("coherent state revives after one oscillator period") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 256, 10.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian1d(grid, 1.0, 1.0 / std::sqrt(2.0), 0.0);

  const PropagationPlan plan = PropagationPlan::for_duration(
      2.0 * std::numbers::pi, 1e-3, Method::split_operator, 1000);
  const Trajectory traj = propagate(psi0, h, plan);
  CHECK(fidelity(grid, psi0.amplitudes(), traj.final_state.amplitudes()) >=
        1.0 - 1e-6);

  SUBCASE("conserved-quantity logs stay flat") {
    CHECK(traj.max_norm_drift() < 1e-9);
    CHECK(traj.max_energy_drift() < 1e-6);
  }
}

TEST_CASE("split-operator agrees with the dense-exponential oracle") {
  const SystemSpec spec = pair_spec();
  const GridSpec grid(2, 16, 6.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian2d(grid, 1.0, -1.0, 0.7);
  const double t = 1.0;

  const WaveFunction dense =
      propagate(psi0, h, PropagationPlan::for_duration(t, t, Method::dense_exponential))
          .final_state;
  const WaveFunction split =
      propagate(psi0, h, PropagationPlan::for_duration(t, 1e-3, Method::split_operator))
          .final_state;
  CHECK(fidelity(grid, dense.amplitudes(), split.amplitudes()) >= 1.0 - 1e-8);
}

TEST_CASE("split-operator converges at second order") {
  const SystemSpec spec = pair_spec();
  const GridSpec grid(2, 16, 6.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian2d(grid, 1.0, -1.0, 0.7);
  const double t = 0.5;

  const WaveFunction oracle =
      propagate(psi0, h, PropagationPlan::for_duration(t, t, Method::dense_exponential))
          .final_state;
  const double coarse = l2_distance(
      grid, oracle,
      propagate(psi0, h, PropagationPlan::for_duration(t, 0.02, Method::split_operator))
          .final_state);
  const double fine = l2_distance(
      grid, oracle,
      propagate(psi0, h, PropagationPlan::for_duration(t, 0.01, Method::split_operator))
          .final_state);
  const double ratio = coarse / fine;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("norm is preserved step by step") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 128, 8.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian1d(grid, 0.5, 0.9, 1.0);
  const Trajectory traj = propagate(
      psi0, h, PropagationPlan::for_duration(1.0, 1e-3, Method::split_operator, 1));
  for (double n : traj.norms) CHECK(std::abs(n - 1.0) < 1e-12);
}

TEST_CASE("time composition is exact for aligned steps") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 128, 8.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian1d(grid, 0.5, 0.9, 1.0);

  const WaveFunction leg1 =
      propagate(psi0, h, PropagationPlan::for_duration(0.3, 1e-3)).final_state;
  const WaveFunction leg2 =
      propagate(leg1, h, PropagationPlan::for_duration(0.5, 1e-3)).final_state;
  const WaveFunction direct =
      propagate(psi0, h, PropagationPlan::for_duration(0.8, 1e-3)).final_state;
  CHECK(fidelity(grid, direct.amplitudes(), leg2.amplitudes()) >= 1.0 - 1e-10);
}

TEST_CASE("anti-aliasing bound rejects oversized steps") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 128, 8.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian1d(grid, 0.0, 1.0, 0.0);
  PropagationPlan plan;
  plan.dt = 1.0;  // max kinetic ~ pi^2/(2 dx^2) >> pi
  plan.n_steps = 1;
  CHECK_THROWS_AS(propagate(psi0, h, plan), ConfigError);
}

TEST_CASE("eigensolve returns the oscillator ladder") {
  const HamiltonianOperator h(harmonic_spec(), GridSpec(1, 128, 8.0));
  const EigenSolution eig = eigensolve(h, 3);
  CHECK(eig.eigenvalues()[0] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(eig.eigenvalues()[1] == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(eig.eigenvalues()[2] == doctest::Approx(2.5).epsilon(1e-5));
  CHECK(eig.max_residual() < 1e-8);

  SUBCASE("expansion coefficients recover a known superposition") {
    const double w = 1.0 / std::sqrt(2.0);
    const HamiltonianOperator h2(harmonic_spec(), GridSpec(1, 128, 8.0));
    const WaveFunction psi = initial_superposition(h2, {0, 1}, {w, w});
    const Eigen::VectorXcd c = eig.expand(psi);
    CHECK(std::abs(c[0]) == doctest::Approx(w).epsilon(1e-8));
    CHECK(std::abs(c[1]) == doctest::Approx(w).epsilon(1e-8));
    CHECK(std::abs(c[2]) < 1e-8);
  }
}

TEST_CASE("free particle has a zero mode") {
  SystemSpec spec;  // no potential, no pair term
  const HamiltonianOperator h(spec, GridSpec(1, 64, 8.0));
  const EigenSolution eig = eigensolve(h, 1);
  CHECK(std::abs(eig.eigenvalues()[0]) < 1e-10);
}

TEST_CASE("simulator spectra are lambda times electron spectra") {
  const DilatationMap map = derive_dilatation(4.0, 1.0);

  auto check_scaling = [&](const SystemSpec& eg, const GridSpec& eg_grid, int k) {
    const HamiltonianOperator h_eg(eg, eg_grid);
    const HamiltonianOperator h_ion(simulator_system(eg, map),
                                    simulator_grid(eg_grid, map));
    const EigenSolution e_eg = eigensolve(h_eg, k);
    const EigenSolution e_ion = eigensolve(h_ion, k);
    for (int i = 0; i < k; ++i)
      CHECK(std::abs(e_ion.eigenvalues()[i] - map.lambda * e_eg.eigenvalues()[i]) /
                std::abs(map.lambda * e_eg.eigenvalues()[i]) <
            1e-8);
  };

  SUBCASE("harmonic confinement") {
    check_scaling(harmonic_spec(), GridSpec(1, 64, 8.0), 4);
  }
  SUBCASE("hard wall") {
    SystemSpec wall;
    wall.external = ExternalPotential::hard_wall(8.0);
    wall.boundary = Boundary::masked_wall;
    check_scaling(wall, GridSpec(1, 64, 6.0), 4);
  }
  SUBCASE("soft-Coulomb pair") { check_scaling(pair_spec(), GridSpec(2, 16, 6.0), 4); }
}

TEST_CASE("propagator identity is trivial on the identity map") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 64, 8.0);
  const WaveFunction psi0 = gaussian1d(grid, 0.6, 0.8, 0.0);
  const auto report = verify_propagator_identity(
      psi0, 1.0, spec, derive_dilatation(1.0, 1.0), Method::dense_exponential);
  CHECK(report.fidelity >= 1.0 - 1e-12);
}

TEST_CASE("propagator identity holds for the interacting pair at mu = 4") {
  const SystemSpec spec = pair_spec();
  const GridSpec grid(2, 16, 6.0);
  GaussianState g;
  g.center = Eigen::Vector2d(1.0, -1.0);
  g.width = Eigen::Vector2d::Constant(0.7);
  g.momentum = Eigen::Vector2d::Zero();
  const WaveFunction psi0 = initial_gaussian(g, grid);

  const auto report = verify_propagator_identity(
      psi0, 1.0, spec, derive_dilatation(4.0, 1.0), Method::dense_exponential);
  CHECK(report.t_tilde == doctest::Approx(0.25));
  CHECK(report.fidelity >= 1.0 - 1e-6);
}

TEST_CASE("free packet spreading matches the analytic law through the mapping") {
  SystemSpec free_spec;  // single free particle
  const GridSpec grid(1, 256, 10.0);
  const double sigma = 1.0;
  const WaveFunction psi0 = gaussian1d(grid, 0.0, sigma, 0.0);
  const double t = 0.5;

  const auto report = verify_propagator_identity(
      psi0, t, free_spec, derive_dilatation(4.0, 1.0), Method::dense_exponential);
  CHECK(report.max_density_residual < 1e-6);

  // density of the electron side against the analytic spreading gaussian
  const double st2 = sigma * sigma + t * t / (4.0 * sigma * sigma);
  for (long j = 0; j < grid.size(); j += 7) {
    const double x = grid.point(j)[0];
    const double analytic =
        std::exp(-x * x / (2.0 * st2)) / std::sqrt(2.0 * std::numbers::pi * st2);
    CHECK(std::norm(report.electron_side.amplitudes()[j]) ==
          doctest::Approx(analytic).epsilon(1e-6));
  }
}

TEST_CASE("dense sampling hits intermediate times") {
  const SystemSpec spec = harmonic_spec();
  const GridSpec grid(1, 64, 8.0);
  const HamiltonianOperator h(spec, grid);
  const WaveFunction psi0 = gaussian1d(grid, 0.5, 0.8, 0.0);

  PropagationPlan plan;
  plan.dt = 0.1;
  plan.n_steps = 10;
  plan.method = Method::dense_exponential;
  plan.sample_stride = 2;
  const Trajectory traj = propagate(psi0, h, plan);
  REQUIRE(traj.times.size() == 6);  // t = 0, .2, .4, .6, .8, 1.0
  CHECK(traj.times[1] == doctest::Approx(0.2));
  CHECK(traj.sample_dt() == doctest::Approx(0.2));

  // split-operator path records the same sample times
  const Trajectory split = propagate(
      psi0, h, PropagationPlan{0.01, 100, Method::split_operator, 20});
  REQUIRE(split.times.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(split.times[i] == doctest::Approx(traj.times[i]));
}

#include "dilatsim/dilatation.hpp"
#include "dilatsim/errors.hpp"
#include "dilatsim/evolve.hpp"
#include "dilatsim/spectral.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace dilatsim;

namespace {

WaveFunction gaussian1d(const GridSpec& grid, double center, double width,
                        double momentum) {
  GaussianState g;
  g.center = Eigen::VectorXd::Constant(1, center);
  g.width = Eigen::VectorXd::Constant(1, width);
  g.momentum = Eigen::VectorXd::Constant(1, momentum);
  return initial_gaussian(g, grid);
}

}  // namespace

TEST_CASE("r = 0 is the identity") {
  const GridSpec grid(1, 128, 8.0);
  const WaveFunction psi = gaussian1d(grid, 0.7, 1.1, 0.4);
  const WaveFunction same = apply_dilatation(psi, 0.0);
  CHECK(fidelity(grid, psi.amplitudes(), same.amplitudes()) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const WaveFunction via_gen = apply_dilatation_via_generator(psi, 0.0, 8);
  CHECK(fidelity(grid, psi.amplitudes(), via_gen.amplitudes()) >= 1.0 - 1e-12);
}

TEST_CASE("gaussian width contracts by exp(-r)") {
  // Analytic oracle: coordinate substitution sends the position variance
  // sigma^2 to exp(-2r) sigma^2 and the mean to exp(-r) times itself.
  const GridSpec grid(1, 256, 12.0);
  const double sigma = 1.3, center = 0.9;
  const WaveFunction psi = gaussian1d(grid, center, sigma, 0.0);
  for (double r : {-0.6, -0.2, 0.35, 0.8}) {
    const WaveFunction mapped = apply_dilatation(psi, r);
    const double mean = mapped.position_expectation(0);
    const double var = mapped.position_second_moment(0) - mean * mean;
    CHECK(mean == doctest::Approx(std::exp(-r) * center).epsilon(1e-8));
    CHECK(var == doctest::Approx(std::exp(-2.0 * r) * sigma * sigma).epsilon(1e-8));
  }
}

TEST_CASE("unitarity on matched grids") {
  const GridSpec grid(1, 256, 12.0);
  const WaveFunction psi = gaussian1d(grid, -0.4, 0.9, 1.2);
  for (double r : {-0.9, 0.1, 0.7}) {
    const WaveFunction mapped = apply_dilatation(psi, r);
    CHECK(std::abs(mapped.norm_squared() - 1.0) < 1e-10);
  }
}

TEST_CASE("cubic resampling onto a fixed grid stays unitary to 1e-6") {
  const GridSpec grid(1, 512, 16.0);
  const WaveFunction psi = gaussian1d(grid, 0.0, 1.0, 0.5);
  for (double r : {-0.4, 0.3}) {
    // target = source grid forces the interpolating path
    const WaveFunction mapped = apply_dilatation(psi, r, grid);
    CHECK(std::abs(mapped.norm_squared() - 1.0) < 1e-6);
  }
}

TEST_CASE("position expectation scales by exp(-r)") {
  const GridSpec grid(1, 256, 12.0);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> center(0.5, 2.0);
  std::uniform_real_distribution<double> width(0.5, 1.5);
  std::uniform_real_distribution<double> rdist(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double c = center(rng) * (rng() % 2 ? 1.0 : -1.0);
    const WaveFunction psi = gaussian1d(grid, c, width(rng), 0.0);
    const double r = rdist(rng);
    const WaveFunction mapped = apply_dilatation(psi, r);
    const double expected = std::exp(-r) * psi.position_expectation(0);
    CHECK(std::abs(mapped.position_expectation(0) - expected) / std::abs(expected) <
          1e-6);
  }
}

TEST_CASE("momentum transform law") {
  const GridSpec grid(1, 256, 12.0);

  SUBCASE("boosted gaussian doubles its momentum at r = ln 2") {
    const WaveFunction psi = gaussian1d(grid, 0.0, 1.0, 1.0);
    const double r = std::log(2.0);
    const WaveFunction mapped = apply_dilatation(psi, r);
    CHECK(mapped.momentum_expectation(0) ==
          doctest::Approx(2.0 * psi.momentum_expectation(0)).epsilon(1e-6));
    const MomentumTransformReport report = momentum_transform_check(psi, r);
    CHECK(report.passed(1e-6));
  }

  SUBCASE("r = 0 has vanishing residual") {
    const WaveFunction psi = gaussian1d(grid, 0.3, 0.8, -0.7);
    const MomentumTransformReport report = momentum_transform_check(psi, 0.0);
    CHECK(report.max_residual < 1e-12);
  }

  SUBCASE("second moment follows the analytic gaussian value") {
    // <p^2> of a width-sigma gaussian with carrier k0 is k0^2 + 1/(4 sigma^2).
    const double sigma = 0.9, k0 = 1.4;
    const WaveFunction psi = gaussian1d(grid, 0.0, sigma, k0);
    const double analytic = k0 * k0 + 1.0 / (4.0 * sigma * sigma);
    CHECK(psi.momentum_second_moment(0) == doctest::Approx(analytic).epsilon(1e-8));
    for (double r : {-0.5, 0.4}) {
      const WaveFunction mapped = apply_dilatation(psi, r);
      CHECK(mapped.momentum_second_moment(0) ==
            doctest::Approx(std::exp(2.0 * r) * analytic).epsilon(1e-8));
    }
  }
}

TEST_CASE("semigroup and inverse") {
  const GridSpec grid(1, 256, 12.0);
  const WaveFunction psi = gaussian1d(grid, 0.5, 1.0, 0.8);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> rdist(-0.8, 0.8);
  for (int i = 0; i < 10; ++i) {
    const double r1 = rdist(rng), r2 = rdist(rng);
    const WaveFunction two = apply_dilatation(apply_dilatation(psi, r1), r2);
    const WaveFunction one = apply_dilatation(psi, r1 + r2);
    CHECK(fidelity(one.grid(), one.amplitudes(), two.amplitudes()) >= 1.0 - 1e-8);

    const WaveFunction back = apply_dilatation(apply_dilatation(psi, r1), -r1);
    CHECK(fidelity(grid, psi.amplitudes(), back.amplitudes()) >= 1.0 - 1e-10);
  }
}

TEST_CASE("generator evolution matches the exact rescale") {
  const GridSpec grid(1, 512, 16.0);
  const WaveFunction psi = gaussian1d(grid, 0.0, 1.0, 0.0);

  SUBCASE("r = 0.5 at default steps") {
    const WaveFunction via_gen = apply_dilatation_via_generator(psi, 0.5);
    // oracle: the exact rescale resampled onto the same fixed grid
    const WaveFunction exact = apply_dilatation(psi, 0.5, grid);
    CHECK(fidelity(grid, exact.amplitudes(), via_gen.amplitudes()) >= 1.0 - 1e-4);
  }

  SUBCASE("two stages compose like one") {
    const WaveFunction staged = apply_dilatation_via_generator(
        apply_dilatation_via_generator(psi, 0.3), 0.2);
    const WaveFunction single = apply_dilatation_via_generator(psi, 0.5);
    CHECK(fidelity(grid, single.amplitudes(), staged.amplitudes()) >= 1.0 - 1e-4);
  }

  SUBCASE("negative r expands instead of contracting") {
    const WaveFunction via_gen = apply_dilatation_via_generator(psi, -0.7);
    const WaveFunction exact = apply_dilatation(psi, -0.7, grid);
    CHECK(fidelity(grid, exact.amplitudes(), via_gen.amplitudes()) >= 1.0 - 1e-4);
  }

  CHECK_THROWS_AS(apply_dilatation_via_generator(psi, 0.5, 0), ConfigError);
}

TEST_CASE("support truncation is detected and measured") {
  const GridSpec grid(1, 128, 8.0);
  // state parked near the edge: expanding it off the grid must refuse
  const WaveFunction psi = gaussian1d(grid, 6.0, 0.8, 0.0);
  try {
    apply_dilatation(psi, -1.2, grid);  // fixed grid, strong expansion
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.leakage() > 1e-8);
  }
}

TEST_CASE("conjugated simulator Hamiltonian equals lambda times the electron one") {
  // Build S(-r) H_s S(r) column by column through the actual dilatation
  // pipeline and compare with lambda * H_eg, then check the spectra match.
  SystemSpec eg;
  eg.external = ExternalPotential::harmonic(1.0);
  const GridSpec eg_grid(1, 64, 8.0);
  const DilatationMap map = derive_dilatation(3.0, 1.0);

  const SystemSpec ion = simulator_system(eg, map);
  const GridSpec ion_grid = simulator_grid(eg_grid, map);
  const HamiltonianOperator h_ion(ion, ion_grid);
  const HamiltonianOperator h_eg(eg, eg_grid);

  const long size = eg_grid.size();
  Eigen::MatrixXcd conjugated(size, size);
  for (long j = 0; j < size; ++j) {
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(size);
    basis[j] = 1.0;
    const WaveFunction up = apply_dilatation(WaveFunction(eg_grid, basis), map.r);
    const WaveFunction down = apply_dilatation(
        WaveFunction(ion_grid, h_ion.apply(up.amplitudes())), -map.r, eg_grid);
    conjugated.col(j) = down.amplitudes();
  }

  CHECK(conjugated.imag().cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::MatrixXd real_part = conjugated.real();
  const double mismatch =
      (real_part - map.lambda * h_eg.dense()).cwiseAbs().maxCoeff() /
      real_part.cwiseAbs().maxCoeff();
  CHECK(mismatch < 1e-8);

  // unitary similarity: same spectrum as the simulator operator
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> conj_eig(real_part);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ion_eig(h_ion.dense());
  for (int i = 0; i < size; ++i)
    CHECK(conj_eig.eigenvalues()[i] ==
          doctest::Approx(ion_eig.eigenvalues()[i])
              .epsilon(1e-8 * std::max(1.0, std::abs(ion_eig.eigenvalues()[i]))));
}

TEST_CASE("softening consistency rule makes the two-particle mapping exact") {
  // With a_eg = exp(r) a_ion the simulator matrix on the contracted grid is
  // lambda times the electron matrix entry by entry.
  SystemSpec eg;
  eg.particles = 2;
  eg.pair_coefficient = 1.0;
  eg.softening = 0.5;
  eg.external = ExternalPotential::harmonic(1.0);
  const GridSpec eg_grid(2, 16, 6.0);

  const DilatationMap map = derive_dilatation(4.0, 1.0);
  const SystemSpec ion = simulator_system(eg, map);
  const GridSpec ion_grid = simulator_grid(eg_grid, map);

  CHECK(ion.softening == doctest::Approx(eg.softening * std::exp(-map.r)));

  const HamiltonianOperator h_ion(ion, ion_grid);
  const HamiltonianOperator h_eg(eg, eg_grid);
  const double mismatch =
      (h_ion.dense() - map.lambda * h_eg.dense()).cwiseAbs().maxCoeff() /
      h_ion.dense().cwiseAbs().maxCoeff();
  CHECK(mismatch < 1e-8);
}

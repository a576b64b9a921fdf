#include "dilatsim/model.hpp"

#include "dilatsim/errors.hpp"
#include "dilatsim/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <numbers>

namespace dilatsim {

void SystemSpec::validate() const {
  if (particles < 1) throw ConfigError("particle count must be >= 1");
  if (dimensions < 1) throw ConfigError("dimensions must be >= 1");
  if (grid_rank() > 4)
    throw ConfigError("N*d = " + std::to_string(grid_rank()) +
                      " exceeds the grid dimensionality cap of 4");
  if (!(mass > 0.0)) throw ConfigError("mass must be positive");
  if (pair_coefficient < 0.0) throw ConfigError("pair coefficient must be >= 0");
  if (!(softening > 0.0)) throw ConfigError("softening must be positive");
  if (boundary == Boundary::masked_wall &&
      external.kind() != ExternalPotential::Kind::hard_wall)
    throw ConfigError("masked_wall boundary requires a hard_wall potential");
}

WaveFunction::WaveFunction(GridSpec grid, Eigen::VectorXcd amplitudes)
    : grid_(std::move(grid)), amp_(std::move(amplitudes)) {
  if (amp_.size() != grid_.size())
    throw ConfigError("amplitude count does not match grid size");
}

double WaveFunction::norm_squared() const { return dilatsim::norm_squared(grid_, amp_); }

void WaveFunction::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw NumericalError("cannot normalize a zero state");
  amp_ /= std::sqrt(n2);
}

namespace {

// <psi| f(x_axis) |psi> for a position-diagonal single-axis observable.
template <typename F>
double axis_position_moment(const GridSpec& g, const Eigen::VectorXcd& amp, int axis,
                            F&& f) {
  const Axis& ax = g.axis(axis);
  long stride = 1;
  for (int b = axis + 1; b < g.rank(); ++b) stride *= g.axis(b).n;
  const long block = stride * ax.n;
  const long n_blocks = g.size() / block;
  double acc = 0.0;
  for (long blk = 0; blk < n_blocks; ++blk)
    for (int i = 0; i < ax.n; ++i) {
      const double fx = f(ax.point(i));
      for (long off = 0; off < stride; ++off)
        acc += fx * std::norm(amp[blk * block + i * stride + off]);
    }
  return acc * g.weight();
}

template <typename F>
double axis_momentum_moment(const GridSpec& g, const Eigen::VectorXcd& amp, int axis,
                            F&& f) {
  Eigen::VectorXcd tilde = amp;
  fft_forward(g, tilde);
  const Axis& ax = g.axis(axis);
  long stride = 1;
  for (int b = axis + 1; b < g.rank(); ++b) stride *= g.axis(b).n;
  const long block = stride * ax.n;
  const long n_blocks = g.size() / block;
  double acc = 0.0;
  for (long blk = 0; blk < n_blocks; ++blk)
    for (int m = 0; m < ax.n; ++m) {
      const double fk = f(ax.wavenumber(m));
      for (long off = 0; off < stride; ++off)
        acc += fk * std::norm(tilde[blk * block + m * stride + off]);
    }
  // forward FFT scales squared amplitudes by size(); weight()/size() restores
  // the quadrature normalization.
  return acc * g.weight() / static_cast<double>(g.size());
}

}  // namespace

double WaveFunction::position_expectation(int axis) const {
  return axis_position_moment(grid_, amp_, axis, [](double x) { return x; });
}

double WaveFunction::position_second_moment(int axis) const {
  return axis_position_moment(grid_, amp_, axis, [](double x) { return x * x; });
}

double WaveFunction::momentum_expectation(int axis) const {
  return axis_momentum_moment(grid_, amp_, axis, [](double k) { return k; });
}

double WaveFunction::momentum_second_moment(int axis) const {
  return axis_momentum_moment(grid_, amp_, axis, [](double k) { return k * k; });
}

HamiltonianOperator::HamiltonianOperator(SystemSpec spec, GridSpec grid)
    : spec_(std::move(spec)), grid_(std::move(grid)) {
  spec_.validate();
  if (grid_.rank() != spec_.grid_rank())
    throw ConfigError("grid rank " + std::to_string(grid_.rank()) +
                      " does not match N*d = " + std::to_string(spec_.grid_rank()));

  kinetic_ = momentum_diagonal(
      grid_, [&](double k, int) { return k * k / (2.0 * spec_.mass); });

  const int d = spec_.dimensions;
  potential_.resize(grid_.size());
  Eigen::VectorXd qi(d), qj(d);
  for (long flat = 0; flat < grid_.size(); ++flat) {
    const Eigen::VectorXd x = grid_.point(flat);
    double v = 0.0;
    for (int i = 0; i < spec_.particles; ++i) {
      qi = x.segment(i * d, d);
      v += spec_.external.evaluate(qi);
      for (int j = i + 1; j < spec_.particles; ++j) {
        qj = x.segment(j * d, d);
        v += soft_coulomb((qi - qj).norm(), spec_.softening, spec_.pair_coefficient);
      }
    }
    potential_[flat] = v;
  }
}

Eigen::VectorXcd HamiltonianOperator::apply(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd kin = psi;
  fft_forward(grid_, kin);
  kin.array() *= kinetic_.array();
  fft_inverse(grid_, kin);
  kin.array() += potential_.array() * psi.array();
  return kin;
}

double HamiltonianOperator::energy_expectation(const WaveFunction& psi) const {
  return inner_product(grid_, psi.amplitudes(), apply(psi.amplitudes())).real();
}

const Eigen::MatrixXd& HamiltonianOperator::dense() const {
  if (dense_) return *dense_;
  if (!dense_available())
    throw FeasibilityError("dense realization needs " + std::to_string(grid_.size()) +
                           " points but the cap is " + std::to_string(kDenseCap));

  const long size = grid_.size();
  Eigen::MatrixXd h = potential_.asDiagonal();

  // Kinetic term: per axis a symmetric circulant T_{jl} = c_{(j-l) mod n}
  // with c_d = (1/n) sum_m (k_m^2 / 2m) cos(2 pi m d / n), lifted onto the
  // full index space.
  for (int a = 0; a < grid_.rank(); ++a) {
    const Axis& ax = grid_.axis(a);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ax.n);
    for (int d = 0; d < ax.n; ++d) {
      double acc = 0.0;
      for (int m = 0; m < ax.n; ++m) {
        const double k = ax.wavenumber(m);
        acc += k * k / (2.0 * spec_.mass) * std::cos(2.0 * std::numbers::pi * m * d / ax.n);
      }
      c[d] = acc / ax.n;
    }

    long stride = 1;
    for (int b = a + 1; b < grid_.rank(); ++b) stride *= grid_.axis(b).n;
    for (long row = 0; row < size; ++row) {
      const int i = static_cast<int>(row / stride % ax.n);
      const long base = row - i * stride;
      for (int j = 0; j < ax.n; ++j)
        h(row, base + j * stride) += c[(i - j + ax.n) % ax.n];
    }
  }

  dense_ = std::move(h);
  return *dense_;
}

HamiltonianOperator build_hamiltonian(const SystemSpec& spec, const GridSpec& grid) {
  return HamiltonianOperator(spec, grid);
}

WaveFunction initial_gaussian(const GaussianState& g, const GridSpec& grid) {
  const int rank = grid.rank();
  if (g.center.size() != rank || g.width.size() != rank || g.momentum.size() != rank)
    throw ConfigError("gaussian parameters must have one entry per grid axis");
  for (int a = 0; a < rank; ++a) {
    if (!(g.width[a] > 0.0)) throw ConfigError("gaussian width must be positive");
    if (std::abs(g.center[a]) >= grid.axis(a).half_extent)
      throw ConfigError("gaussian center lies outside the grid on axis " +
                        std::to_string(a));
  }

  Eigen::VectorXcd amp(grid.size());
  for (long flat = 0; flat < grid.size(); ++flat) {
    const Eigen::VectorXd x = grid.point(flat);
    double arg = 0.0, phase = 0.0;
    for (int a = 0; a < rank; ++a) {
      const double dx = x[a] - g.center[a];
      arg += dx * dx / (4.0 * g.width[a] * g.width[a]);
      phase += g.momentum[a] * x[a];
    }
    amp[flat] = std::exp(std::complex<double>(-arg, phase));
  }
  WaveFunction psi(grid, std::move(amp));
  psi.normalize();
  return psi;
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_dense(const HamiltonianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
  if (es.info() != Eigen::Success)
    throw NumericalError("dense eigensolve failed to converge");
  return es;
}

}  // namespace

WaveFunction initial_eigenstate(const HamiltonianOperator& h, int index) {
  if (index < 0 || index >= h.grid().size())
    throw ConfigError("eigenstate index " + std::to_string(index) +
                      " beyond computed spectrum");
  const auto es = solve_dense(h);
  const double inv_sqrt_w = 1.0 / std::sqrt(h.grid().weight());
  WaveFunction psi(h.grid(),
                   (es.eigenvectors().col(index) * inv_sqrt_w).cast<std::complex<double>>());
  psi.normalize();
  return psi;
}

WaveFunction initial_superposition(const HamiltonianOperator& h,
                                   const std::vector<int>& indices,
                                   const std::vector<std::complex<double>>& weights) {
  if (indices.empty() || indices.size() != weights.size())
    throw ConfigError("superposition needs matching index and weight lists");
  const auto es = solve_dense(h);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(h.grid().size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= h.grid().size())
      throw ConfigError("eigenstate index " + std::to_string(indices[i]) +
                        " beyond computed spectrum");
    amp += weights[i] * es.eigenvectors().col(indices[i]).cast<std::complex<double>>();
  }
  amp /= std::sqrt(h.grid().weight());
  WaveFunction psi(h.grid(), std::move(amp));
  psi.normalize();
  return psi;
}

std::vector<long> swap_permutation(const SystemSpec& spec, const GridSpec& grid,
                                   int pi, int pj) {
  const int d = spec.dimensions;
  for (int c = 0; c < d; ++c) {
    const Axis& a = grid.axis(pi * d + c);
    const Axis& b = grid.axis(pj * d + c);
    if (a.n != b.n || a.half_extent != b.half_extent)
      throw ConfigError("particle swap requires identical axes");
  }
  std::vector<long> perm(grid.size());
  for (long flat = 0; flat < grid.size(); ++flat) {
    std::vector<int> idx = grid.unflatten(flat);
    for (int c = 0; c < d; ++c) std::swap(idx[pi * d + c], idx[pj * d + c]);
    perm[flat] = grid.flatten(idx);
  }
  return perm;
}

WaveFunction antisymmetrize(const SystemSpec& spec, const WaveFunction& psi) {
  if (spec.particles != 2)
    throw ConfigError("antisymmetrization projector is implemented for N = 2 only");
  const std::vector<long> perm = swap_permutation(spec, psi.grid(), 0, 1);
  Eigen::VectorXcd amp(psi.grid().size());
  for (long flat = 0; flat < psi.grid().size(); ++flat)
    amp[flat] = psi.amplitudes()[flat] - psi.amplitudes()[perm[flat]];
  WaveFunction out(psi.grid(), std::move(amp));
  out.normalize();
  return out;
}

}  // namespace dilatsim

#include "dilatsim/dilatation.hpp"

#include "dilatsim/errors.hpp"
#include "dilatsim/spectral.hpp"

#include <cmath>

namespace dilatsim {

namespace {

constexpr double kLeakageTolerance = 1e-8;

bool commensurate(const GridSpec& source, const GridSpec& target, double r) {
  if (!source.same_shape(target)) return false;
  const double factor = std::exp(-r);
  for (int a = 0; a < source.rank(); ++a) {
    const double expected = source.axis(a).half_extent * factor;
    if (std::abs(target.axis(a).half_extent - expected) > 1e-12 * expected)
      return false;
  }
  return true;
}

// Lagrange cubic weights for the 4 nodes i0-1 .. i0+2 at fractional offset t
// from node i0.
void cubic_weights(double t, double w[4]) {
  w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  w[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  w[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  w[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
}

// Evaluate psi at an off-grid point by separable cubic interpolation;
// points outside the grid contribute zero.
std::complex<double> interpolate(const WaveFunction& psi,
                                 const Eigen::VectorXd& x) {
  const GridSpec& g = psi.grid();
  const int rank = g.rank();
  int base[4];
  double weights[4][4];
  for (int a = 0; a < rank; ++a) {
    const Axis& ax = g.axis(a);
    const double u = (x[a] + ax.half_extent) / ax.spacing();
    const int i0 = static_cast<int>(std::floor(u));
    cubic_weights(u - i0, weights[a]);
    base[a] = i0 - 1;
  }

  std::complex<double> acc = 0.0;
  std::vector<int> idx(rank);
  const int combos = 1 << (2 * rank);  // 4^rank neighbor offsets
  for (int combo = 0; combo < combos; ++combo) {
    double w = 1.0;
    bool in_range = true;
    int rest = combo;
    for (int a = 0; a < rank; ++a) {
      const int off = rest & 3;
      rest >>= 2;
      const int i = base[a] + off;
      if (i < 0 || i >= g.axis(a).n) {
        in_range = false;
        break;
      }
      idx[a] = i;
      w *= weights[a][off];
    }
    if (in_range && w != 0.0) acc += w * psi.amplitudes()[g.flatten(idx)];
  }
  return acc;
}

WaveFunction rescale_cubic(const WaveFunction& psi, double r, const GridSpec& target) {
  const double er = std::exp(r);
  const double amp_factor =
      DilatationAction{r}.amplitude_factor(psi.grid().rank());
  Eigen::VectorXcd amp(target.size());
  Eigen::VectorXd x(target.rank());
  for (long flat = 0; flat < target.size(); ++flat) {
    x = target.point(flat) * er;
    amp[flat] = amp_factor * interpolate(psi, x);
  }
  return WaveFunction(target, std::move(amp));
}

}  // namespace

double DilatationAction::amplitude_factor(int rank) const {
  return std::exp(0.5 * r * rank);
}

double dilatation_leakage(const WaveFunction& psi, double r, const GridSpec& target) {
  const GridSpec& g = psi.grid();
  const double er = std::exp(r);
  double outside = 0.0;
  for (long flat = 0; flat < g.size(); ++flat) {
    const Eigen::VectorXd x = g.point(flat);
    bool covered = true;
    for (int a = 0; a < g.rank(); ++a)
      // pre-image of the target grid under x -> exp(r) x
      if (std::abs(x[a]) > target.axis(a).half_extent * er) {
        covered = false;
        break;
      }
    if (!covered) outside += std::norm(psi.amplitudes()[flat]);
  }
  return outside * g.weight() / psi.norm_squared();
}

WaveFunction apply_dilatation(const WaveFunction& psi, double r,
                              const GridSpec& target) {
  if (psi.grid().rank() != target.rank())
    throw ConfigError("dilatation target grid rank mismatch");

  if (commensurate(psi.grid(), target, r)) {
    // Exact relabeling: node j of the target sits at exp(-r) times node j
    // of the source, so only the amplitude factor enters.
    const double f = DilatationAction{r}.amplitude_factor(psi.grid().rank());
    return WaveFunction(target, f * psi.amplitudes());
  }

  const double leakage = dilatation_leakage(psi, r, target);
  if (leakage > kLeakageTolerance)
    throw TruncationError("dilatation truncates " + std::to_string(leakage) +
                              " of the state's norm outside the target grid",
                          leakage);
  return rescale_cubic(psi, r, target);
}

WaveFunction apply_dilatation(const WaveFunction& psi, double r) {
  return apply_dilatation(psi, r, psi.grid().scaled(std::exp(-r)));
}

WaveFunction apply_dilatation_via_generator(const WaveFunction& psi, double r,
                                            int steps) {
  if (steps < 1) throw ConfigError("generator evolution needs steps >= 1");
  const double dr = r / steps;
  WaveFunction state = psi;
  for (int s = 0; s < steps; ++s) {
    const double leakage = dilatation_leakage(state, dr, state.grid());
    if (leakage > kLeakageTolerance)
      throw TruncationError(
          "generator substep truncates " + std::to_string(leakage) + " of the norm",
          leakage);
    state = rescale_cubic(state, dr, state.grid());
    state.normalize();
  }
  return state;
}

MomentumTransformReport momentum_transform_check(const WaveFunction& psi, double r) {
  const WaveFunction mapped = apply_dilatation(psi, r);
  const int rank = psi.grid().rank();
  const double er = std::exp(r);

  MomentumTransformReport report;
  report.r = r;
  report.first_moment_residual.resize(rank);
  report.second_moment_residual.resize(rank);
  for (int a = 0; a < rank; ++a) {
    const double p_expected = er * psi.momentum_expectation(a);
    const double p_actual = mapped.momentum_expectation(a);
    const double p2_expected = er * er * psi.momentum_second_moment(a);
    const double p2_actual = mapped.momentum_second_moment(a);
    const double p_den = std::abs(p_expected);
    const double p2_den = std::abs(p2_expected);
    report.first_moment_residual[a] =
        std::abs(p_actual - p_expected) / (p_den > 0.0 ? p_den : 1.0);
    report.second_moment_residual[a] =
        std::abs(p2_actual - p2_expected) / (p2_den > 0.0 ? p2_den : 1.0);
  }
  report.max_residual = std::max(report.first_moment_residual.cwiseAbs().maxCoeff(),
                                 report.second_moment_residual.cwiseAbs().maxCoeff());
  return report;
}

}  // namespace dilatsim

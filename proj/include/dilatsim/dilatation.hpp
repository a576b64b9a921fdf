#pragma once

#include "dilatsim/model.hpp"

namespace dilatsim {

// Unitary coordinate rescaling: in position representation
//   (S(r) psi)(x) = exp(r * A / 2) * psi(exp(r) x)
// over all A = N*d grid axes, so positions contract by exp(-r) and momenta
// stretch by exp(r).
//
// Two realizations:
//  - grid-commensurate: the target grid is the source grid with every
//    half-extent multiplied by exp(-r), making the map an exact relabeling
//    plus amplitude factor (no interpolation error);
//  - cubic: the rescaled state is resampled onto an arbitrary target grid
//    with separable 4-point Lagrange interpolation.
struct DilatationAction {
  enum class Mode { exact_rescale, generator_evolution };
  enum class Interpolation { grid_commensurate, cubic };

  double r = 0.0;
  Mode mode = Mode::exact_rescale;
  Interpolation interpolation = Interpolation::grid_commensurate;

  double amplitude_factor(int rank) const;  // exp(r * rank / 2)
};

// Fraction of |psi|^2 outside the pre-image of the target grid; this much
// norm cannot survive the rescaling onto `target`.
double dilatation_leakage(const WaveFunction& psi, double r, const GridSpec& target);

// S(r) onto an explicit target grid. Picks the exact relabeling when the
// target is grid-commensurate with the source, cubic resampling otherwise.
// Throws TruncationError when the support leakage exceeds 1e-8.
WaveFunction apply_dilatation(const WaveFunction& psi, double r,
                              const GridSpec& target);

// S(r) onto the commensurate target (source grid scaled by exp(-r)).
WaveFunction apply_dilatation(const WaveFunction& psi, double r);

// S(r) realized as evolution under its generator: the dilatation flow is
// advanced in `steps` equal substeps on the fixed source grid, each substep
// an exact small rescale resampled cubically and renormalized. Matches the
// exact-rescale form up to accumulated interpolation error.
WaveFunction apply_dilatation_via_generator(const WaveFunction& psi, double r,
                                            int steps = 64);

struct MomentumTransformReport {
  double r = 0.0;
  // residual of <p>_{S psi} = exp(r) <p>_psi, relative per axis (absolute
  // where the expected value vanishes)
  Eigen::VectorXd first_moment_residual;
  // residual of <p^2>_{S psi} = exp(2r) <p^2>_psi
  Eigen::VectorXd second_moment_residual;
  double max_residual = 0.0;
  bool passed(double tol = 1e-6) const { return max_residual < tol; }
};

MomentumTransformReport momentum_transform_check(const WaveFunction& psi, double r);

}  // namespace dilatsim

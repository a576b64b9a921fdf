#pragma once

#include "dilatsim/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace dilatsim {

// In-place multi-axis discrete Fourier transform of row-major grid data.
// Forward uses the e^{-i k x} kernel per axis without normalization; the
// inverse carries the full 1/size() factor, so inverse(forward(a)) == a.
// A plane wave exp(i k_m x_j) lands in bin m of the corresponding axis.
void fft_forward(const GridSpec& grid, Eigen::VectorXcd& data);
void fft_inverse(const GridSpec& grid, Eigen::VectorXcd& data);

// Momentum-space diagonal sum_axes f(k_axis), flattened row-major like the
// position data.
Eigen::VectorXd momentum_diagonal(const GridSpec& grid,
                                  const std::function<double(double, int)>& f);

// Quadrature-weighted inner product <a|b> on a grid.
template <typename DerivedA, typename DerivedB>
std::complex<double> inner_product(const GridSpec& grid,
                                   const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
  return grid.weight() * a.conjugate().cwiseProduct(b.derived()).sum();
}

template <typename Derived>
double norm_squared(const GridSpec& grid, const Eigen::MatrixBase<Derived>& a) {
  return grid.weight() * a.derived().squaredNorm();
}

// |<a|b>|^2 with grid quadrature weights; bounded in [0, 1] for normalized
// states.
template <typename DerivedA, typename DerivedB>
double fidelity(const GridSpec& grid, const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  return std::norm(inner_product(grid, a, b));
}

}  // namespace dilatsim

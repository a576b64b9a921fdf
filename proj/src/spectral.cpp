#include "dilatsim/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <functional>

namespace dilatsim {

namespace {

// Transforms along one axis of the row-major array. Lines along axis `a`
// have stride = product of the axis lengths after `a`.
void fft_axis(const GridSpec& grid, Eigen::VectorXcd& data, int axis, bool forward) {
  const int n = grid.axis(axis).n;
  long stride = 1;
  for (int b = axis + 1; b < grid.rank(); ++b) stride *= grid.axis(b).n;
  const long block = stride * n;
  const long n_blocks = grid.size() / block;

  Eigen::FFT<double> fft;
  Eigen::VectorXcd line(n), out(n);
  for (long blk = 0; blk < n_blocks; ++blk) {
    for (long off = 0; off < stride; ++off) {
      const long base = blk * block + off;
      for (int i = 0; i < n; ++i) line[i] = data[base + i * stride];
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);
      for (int i = 0; i < n; ++i) data[base + i * stride] = out[i];
    }
  }
}

}  // namespace

void fft_forward(const GridSpec& grid, Eigen::VectorXcd& data) {
  for (int a = 0; a < grid.rank(); ++a) fft_axis(grid, data, a, true);
}

void fft_inverse(const GridSpec& grid, Eigen::VectorXcd& data) {
  for (int a = 0; a < grid.rank(); ++a) fft_axis(grid, data, a, false);
}

Eigen::VectorXd momentum_diagonal(const GridSpec& grid,
                                  const std::function<double(double, int)>& f) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(grid.size());
  for (int a = 0; a < grid.rank(); ++a) {
    const Axis& ax = grid.axis(a);
    long stride = 1;
    for (int b = a + 1; b < grid.rank(); ++b) stride *= grid.axis(b).n;
    const long block = stride * ax.n;
    const long n_blocks = grid.size() / block;
    for (long blk = 0; blk < n_blocks; ++blk)
      for (int m = 0; m < ax.n; ++m) {
        const double val = f(ax.wavenumber(m), a);
        for (long off = 0; off < stride; ++off)
          diag[blk * block + m * stride + off] += val;
      }
  }
  return diag;
}

}  // namespace dilatsim

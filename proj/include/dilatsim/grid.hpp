#pragma once

#include <Eigen/Dense>

#include <vector>
#include <numbers>

namespace dilatsim {

// One coordinate axis: n uniformly spaced points covering [-half_extent,
// half_extent) with periodic topology. n must be a power of two >= 8 so the
// spectral kinetic operator applies cleanly.
struct Axis {
  int n = 0;
  double half_extent = 0.0;

  double spacing() const { return 2.0 * half_extent / n; }
  // Node coordinate; the right edge +half_extent is the periodic image of
  // the left one and carries no node.
  double point(int i) const { return -half_extent + i * spacing(); }
  // FFT wavenumber of bin m, in {-pi/dx, ..., pi/dx}. Standard layout:
  // nonnegative frequencies first, then negative.
  double wavenumber(int m) const {
    const int folded = (m <= n / 2) ? m : m - n;
    return 2.0 * std::numbers::pi * folded / (n * spacing());
  }
};

// Rectangular coordinate grid, row-major over axes (last axis fastest).
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<Axis> axes);
  // Convenience: `rank` identical axes.
  GridSpec(int rank, int n, double half_extent);

  int rank() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  const std::vector<Axis>& axes() const { return axes_; }
  long size() const { return size_; }

  // Product of all axis spacings; the quadrature weight of one node.
  double weight() const;

  // Row-major flattening.
  long flatten(const std::vector<int>& idx) const;
  std::vector<int> unflatten(long flat) const;

  // Coordinates of a node as a rank-dimensional point.
  Eigen::VectorXd point(long flat) const;

  // Index of the grid node nearest to x along axis a (clamped to range).
  int nearest_index(int a, double x) const;

  // The same axes with every half-extent multiplied by `factor`. This is
  // the partner grid of a grid-commensurate dilatation.
  GridSpec scaled(double factor) const;

  bool same_shape(const GridSpec& other) const;

  bool operator==(const GridSpec& other) const;

 private:
  std::vector<Axis> axes_;
  long size_ = 0;
};

bool is_power_of_two(long v);

}  // namespace dilatsim

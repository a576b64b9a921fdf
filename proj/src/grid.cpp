#include "dilatsim/grid.hpp"

#include "dilatsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dilatsim {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ConfigError("grid needs at least one axis");
  size_ = 1;
  for (const Axis& ax : axes_) {
    if (ax.n < 8 || !is_power_of_two(ax.n))
      throw ConfigError("axis point count must be a power of two >= 8, got " +
                        std::to_string(ax.n));
    if (!(ax.half_extent > 0.0))
      throw ConfigError("axis half-extent must be positive");
    size_ *= ax.n;
  }
}

GridSpec::GridSpec(int rank, int n, double half_extent)
    : GridSpec(std::vector<Axis>(rank, Axis{n, half_extent})) {}

double GridSpec::weight() const {
  double w = 1.0;
  for (const Axis& ax : axes_) w *= ax.spacing();
  return w;
}

long GridSpec::flatten(const std::vector<int>& idx) const {
  long flat = 0;
  for (int a = 0; a < rank(); ++a) flat = flat * axes_[a].n + idx[a];
  return flat;
}

std::vector<int> GridSpec::unflatten(long flat) const {
  std::vector<int> idx(rank());
  for (int a = rank() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % axes_[a].n);
    flat /= axes_[a].n;
  }
  return idx;
}

Eigen::VectorXd GridSpec::point(long flat) const {
  const std::vector<int> idx = unflatten(flat);
  Eigen::VectorXd x(rank());
  for (int a = 0; a < rank(); ++a) x[a] = axes_[a].point(idx[a]);
  return x;
}

int GridSpec::nearest_index(int a, double x) const {
  const Axis& ax = axes_[a];
  const int i = static_cast<int>(std::lround((x + ax.half_extent) / ax.spacing()));
  return std::clamp(i, 0, ax.n - 1);
}

GridSpec GridSpec::scaled(double factor) const {
  std::vector<Axis> axes = axes_;
  for (Axis& ax : axes) ax.half_extent *= factor;
  return GridSpec(std::move(axes));
}

bool GridSpec::same_shape(const GridSpec& other) const {
  if (rank() != other.rank()) return false;
  for (int a = 0; a < rank(); ++a)
    if (axes_[a].n != other.axes_[a].n) return false;
  return true;
}

bool GridSpec::operator==(const GridSpec& other) const {
  if (!same_shape(other)) return false;
  for (int a = 0; a < rank(); ++a)
    if (axes_[a].half_extent != other.axes_[a].half_extent) return false;
  return true;
}

}  // namespace dilatsim

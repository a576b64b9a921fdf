#include "dilatsim/potential.hpp"

#include "dilatsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dilatsim {

double soft_coulomb(double separation, double softening, double pair_coeff) {
  if (!(softening > 0.0))
    throw ConfigError("soft-core softening must be positive, got " +
                      std::to_string(softening));
  return pair_coeff / std::sqrt(separation * separation + softening * softening);
}

ExternalPotential ExternalPotential::none() { return {}; }

ExternalPotential ExternalPotential::harmonic(double stiffness) {
  if (!(stiffness > 0.0)) throw ConfigError("harmonic stiffness must be positive");
  ExternalPotential p;
  p.kind_ = Kind::harmonic;
  p.stiffness_ = stiffness;
  return p;
}

ExternalPotential ExternalPotential::harmonic_from_omega(double omega, double mass) {
  return harmonic(mass * omega * omega);
}

ExternalPotential ExternalPotential::hard_wall(double width, double height) {
  if (!(width > 0.0)) throw ConfigError("wall width must be positive");
  if (!(height > 0.0)) throw ConfigError("wall height must be positive");
  ExternalPotential p;
  p.kind_ = Kind::hard_wall;
  p.wall_width_ = width;
  p.wall_height_ = height;
  return p;
}

ExternalPotential ExternalPotential::tabulated(std::vector<double> positions,
                                               std::vector<double> values) {
  if (positions.size() != values.size() || positions.size() < 2)
    throw ConfigError("tabulated potential needs >= 2 (position, value) rows");
  if (!std::is_sorted(positions.begin(), positions.end()))
    throw ConfigError("tabulated potential positions must be ascending");
  ExternalPotential p;
  p.kind_ = Kind::tabulated;
  p.tab_x_ = std::move(positions);
  p.tab_v_ = std::move(values);
  return p;
}

ExternalPotential ExternalPotential::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated potential file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double x, v;
    if (row >> x >> v) {
      xs.push_back(x);
      vs.push_back(v);
    }
  }
  return tabulated(std::move(xs), std::move(vs));
}

namespace {

double interp_linear(const std::vector<double>& xs, const std::vector<double>& vs,
                     double x) {
  // Clamp outside the tabulated range.
  if (x <= xs.front()) return vs.front();
  if (x >= xs.back()) return vs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - t) * vs[lo] + t * vs[hi];
}

}  // namespace

double ExternalPotential::evaluate(const Eigen::Ref<const Eigen::VectorXd>& q) const {
  switch (kind_) {
    case Kind::none:
      return 0.0;
    case Kind::harmonic:
      return 0.5 * stiffness_ * q.squaredNorm();
    case Kind::hard_wall: {
      const double half = 0.5 * wall_width_;
      for (int c = 0; c < q.size(); ++c)
        if (std::abs(q[c]) > half) return wall_height_;
      return 0.0;
    }
    case Kind::tabulated: {
      const double arg = (q.size() == 1) ? q[0] : q.norm();
      return interp_linear(tab_x_, tab_v_, arg);
    }
  }
  return 0.0;
}

double ExternalPotential::evaluate(double x) const {
  Eigen::VectorXd q(1);
  q[0] = x;
  return evaluate(q);
}

ExternalPotential ExternalPotential::scaled(double r, double amplitude) const {
  const double er = std::exp(r);
  switch (kind_) {
    case Kind::none:
      return none();
    case Kind::harmonic:
      // amplitude * 0.5 k (e^r q)^2 = 0.5 (amplitude e^{2r} k) q^2
      return harmonic(amplitude * er * er * stiffness_);
    case Kind::hard_wall:
      return hard_wall(wall_width_ / er, amplitude * wall_height_);
    case Kind::tabulated: {
      std::vector<double> xs = tab_x_;
      std::vector<double> vs = tab_v_;
      for (double& x : xs) x /= er;
      for (double& v : vs) v *= amplitude;
      return tabulated(std::move(xs), std::move(vs));
    }
  }
  return none();
}

std::string ExternalPotential::describe() const {
  switch (kind_) {
    case Kind::none:
      return "none";
    case Kind::harmonic:
      return "harmonic(stiffness=" + std::to_string(stiffness_) + ")";
    case Kind::hard_wall:
      return "hard_wall(width=" + std::to_string(wall_width_) +
             ", height=" + std::to_string(wall_height_) + ")";
    case Kind::tabulated:
      return "tabulated(" + std::to_string(tab_x_.size()) + " rows)";
  }
  return "none";
}

}  // namespace dilatsim

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dilatsim {

// Regularized Coulomb kernel c / sqrt(s^2 + a^2). The bare 1/|s| kernel is
// singular on a grid; the softened form keeps the maximum finite at zero
// separation and decays like c/s for s >> a.
double soft_coulomb(double separation, double softening, double pair_coeff);

// External single-particle potential. Evaluation takes the full
// d-dimensional coordinate of one particle; the tabulated kind is read from
// a two-column text file and interpolated linearly (as a function of the
// coordinate in 1D, of the radius |q| in higher dimensions).
class ExternalPotential {
 public:
  enum class Kind { none, harmonic, hard_wall, tabulated };

  static ExternalPotential none();
  // V(q) = 0.5 * stiffness * |q|^2
  static ExternalPotential harmonic(double stiffness);
  static ExternalPotential harmonic_from_omega(double omega, double mass);
  // Box of total width `width` centered at the origin, realized as a finite
  // mask of the given height outside |q_c| <= width/2 on every component.
  static ExternalPotential hard_wall(double width, double height = 1.0e4);
  static ExternalPotential tabulated(std::vector<double> positions,
                                     std::vector<double> values);
  static ExternalPotential tabulated_from_file(const std::string& path);

  Kind kind() const { return kind_; }
  double stiffness() const { return stiffness_; }
  double wall_width() const { return wall_width_; }
  double wall_height() const { return wall_height_; }

  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& q) const;
  double evaluate(double x) const;

  // Pointwise transform V'(q) = amplitude * V(exp(r) q). Structure is
  // preserved per kind: harmonic stiffness picks up amplitude*exp(2r), the
  // wall width shrinks by exp(-r), tabulated nodes are remapped.
  ExternalPotential scaled(double r, double amplitude) const;

  std::string describe() const;

 private:
  ExternalPotential() = default;

  Kind kind_ = Kind::none;
  double stiffness_ = 0.0;
  double wall_width_ = 0.0;
  double wall_height_ = 0.0;
  std::vector<double> tab_x_;
  std::vector<double> tab_v_;
};

}  // namespace dilatsim

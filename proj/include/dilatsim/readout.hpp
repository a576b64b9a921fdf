#pragma once

#include "dilatsim/evolve.hpp"

#include <complex>
#include <string>
#include <vector>

namespace dilatsim {

// Observables sampled along a trajectory. Every kind oscillates only at
// Bohr frequencies E_v - E_v' of the populated eigenpairs; they differ in
// which matrix elements weight each line.
struct ObservableSpec {
  enum class Kind {
    density_at_point,      // one-body density at a probe point, summed over particles
    position_expectation,  // <q> along one grid axis
    autocorrelation,       // <psi(0)|psi(t)>
  };

  Kind kind = Kind::density_at_point;
  Eigen::VectorXd probe;  // d-dim probe point for density_at_point
  int axis = 0;           // axis for position_expectation

  std::string id() const;
};

struct MeasurementRecord {
  ObservableSpec observable;
  double sample_dt = 0.0;
  std::vector<std::complex<double>> values;

  double duration() const { return sample_dt * static_cast<double>(values.size()); }
  bool is_real() const;
  double variance() const;  // of the real part
};

// Evaluates the observable on every retained trajectory sample.
MeasurementRecord record(const Trajectory& traj, const SystemSpec& spec,
                         const ObservableSpec& obs);

enum class Window { none, hann };

struct SpectrumPeak {
  double omega = 0.0;
  double power = 0.0;
  double width = 0.0;  // half-power width
};

struct SpectrumEstimate {
  Eigen::VectorXd omega;  // one-sided frequency grid, omega >= 0
  Eigen::VectorXd power;  // nonnegative; sums to the windowed-signal energy
  std::vector<SpectrumPeak> peaks;  // ascending in omega
  Window window = Window::hann;
  double resolution = 0.0;  // 2 pi / duration
  double threshold = 5.0;   // peak gate, in units of the median power
  double total_power = 0.0;
};

// Mean-subtracts, windows, transforms. Complex records (autocorrelation)
// are reduced to |.|^2 first so every analyzed signal is real and peaks sit
// at Bohr differences. Peaks are strict local maxima above
// threshold * median power. Requires >= 64 samples.
SpectrumEstimate extract_spectrum(const MeasurementRecord& rec,
                                  Window window = Window::hann,
                                  double threshold = 5.0);

struct PeakAssignment {
  double omega = 0.0;
  double bohr = 0.0;  // nearest scaled |E_v - E_v'|
  double residual = 0.0;
  bool matched = false;
};

struct MatchReport {
  std::vector<PeakAssignment> assignments;
  double matched_fraction = 1.0;  // vacuously 1 with no peaks
  double max_residual = 0.0;
  int peak_count = 0;
};

// Assigns each detected peak to the nearest Bohr difference of `eig`,
// multiplied by `scale` (lambda when the record was taken on the simulator
// clock). Requires tol >= spectrum resolution.
MatchReport match_peaks(const SpectrumEstimate& spectrum, const EigenSolution& eig,
                        double tol, double scale = 1.0);

// All pairwise eigenvalue differences |E_v - E_v'|, v < v', ascending.
std::vector<double> bohr_differences(const EigenSolution& eig);

}  // namespace dilatsim

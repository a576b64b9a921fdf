#include "dilatsim/readout.hpp"

#include "dilatsim/errors.hpp"
#include "dilatsim/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dilatsim {

std::string ObservableSpec::id() const {
  switch (kind) {
    case Kind::density_at_point: {
      std::string s = "density_at(";
      for (int i = 0; i < probe.size(); ++i)
        s += (i ? "," : "") + std::to_string(probe[i]);
      return s + ")";
    }
    case Kind::position_expectation:
      return "position_axis" + std::to_string(axis);
    case Kind::autocorrelation:
      return "autocorrelation";
  }
  return "unknown";
}

bool MeasurementRecord::is_real() const {
  for (const auto& v : values)
    if (v.imag() != 0.0) return false;
  return true;
}

double MeasurementRecord::variance() const {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (const auto& v : values) mean += v.real();
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const auto& v : values) var += (v.real() - mean) * (v.real() - mean);
  return var / static_cast<double>(values.size());
}

namespace {

// One-body density of one particle at the grid node nearest the probe:
// |psi|^2 marginalized over all other coordinates.
double particle_density(const WaveFunction& psi, const SystemSpec& spec,
                        int particle, const Eigen::VectorXd& probe) {
  const GridSpec& g = psi.grid();
  const int d = spec.dimensions;
  std::vector<long> stride(g.rank(), 1);
  for (int a = g.rank() - 2; a >= 0; --a) stride[a] = stride[a + 1] * g.axis(a + 1).n;

  std::vector<int> probe_idx(d);
  double other_weight = 1.0;
  for (int a = 0; a < g.rank(); ++a)
    if (a / d != particle) other_weight *= g.axis(a).spacing();
  for (int c = 0; c < d; ++c) {
    const int a = particle * d + c;
    if (std::abs(probe[c]) > g.axis(a).half_extent)
      throw ConfigError("probe point outside the grid on axis " + std::to_string(a));
    probe_idx[c] = g.nearest_index(a, probe[c]);
  }

  double acc = 0.0;
  for (long flat = 0; flat < g.size(); ++flat) {
    bool at_probe = true;
    for (int c = 0; c < d; ++c) {
      const int a = particle * d + c;
      if (static_cast<int>(flat / stride[a]) % g.axis(a).n != probe_idx[c]) {
        at_probe = false;
        break;
      }
    }
    if (at_probe) acc += std::norm(psi.amplitudes()[flat]);
  }
  return acc * other_weight;
}

std::complex<double> evaluate_observable(const WaveFunction& state,
                                         const WaveFunction& initial,
                                         const SystemSpec& spec,
                                         const ObservableSpec& obs) {
  switch (obs.kind) {
    case ObservableSpec::Kind::density_at_point: {
      double n = 0.0;
      for (int p = 0; p < spec.particles; ++p)
        n += particle_density(state, spec, p, obs.probe);
      return n;
    }
    case ObservableSpec::Kind::position_expectation:
      return state.position_expectation(obs.axis);
    case ObservableSpec::Kind::autocorrelation:
      return inner_product(state.grid(), initial.amplitudes(), state.amplitudes());
  }
  return 0.0;
}

}  // namespace

MeasurementRecord record(const Trajectory& traj, const SystemSpec& spec,
                         const ObservableSpec& obs) {
  if (traj.states.empty())
    throw ConfigError("trajectory retains no sampled states to record from");
  if (obs.kind == ObservableSpec::Kind::density_at_point &&
      obs.probe.size() != spec.dimensions)
    throw ConfigError("density probe needs one coordinate per spatial dimension");

  MeasurementRecord rec;
  rec.observable = obs;
  rec.sample_dt = traj.sample_dt();
  rec.values.reserve(traj.states.size());
  for (const WaveFunction& state : traj.states)
    rec.values.push_back(evaluate_observable(state, traj.states.front(), spec, obs));
  return rec;
}

SpectrumEstimate extract_spectrum(const MeasurementRecord& rec, Window window,
                                  double threshold) {
  const long n = static_cast<long>(rec.values.size());
  if (n < 64)
    throw ConfigError("record too short for spectral analysis: " +
                      std::to_string(n) + " < 64 samples");
  if (!(rec.sample_dt > 0.0)) throw ConfigError("record sample spacing must be positive");

  // Complex records carry e^{-i E t} phases; their squared magnitude is the
  // real signal whose lines sit at Bohr differences.
  Eigen::VectorXd signal(n);
  const bool complex_record = !rec.is_real();
  for (long j = 0; j < n; ++j)
    signal[j] = complex_record ? std::norm(rec.values[j]) : rec.values[j].real();

  signal.array() -= signal.mean();
  if (window == Window::hann)
    for (long j = 0; j < n; ++j)
      signal[j] *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * j / n));

  Eigen::FFT<double> fft;
  Eigen::VectorXcd transform(n);
  {
    Eigen::VectorXcd input = signal.cast<std::complex<double>>();
    fft.fwd(transform, input);
  }

  const double duration = rec.duration();
  const long half = n / 2;
  SpectrumEstimate est;
  est.window = window;
  est.threshold = threshold;
  est.resolution = 2.0 * std::numbers::pi / duration;
  est.omega.resize(half + 1);
  est.power.resize(half + 1);
  for (long k = 0; k <= half; ++k) {
    est.omega[k] = 2.0 * std::numbers::pi * k / duration;
    // One-sided: interior bins absorb their negative-frequency twins, so the
    // total equals the windowed-signal energy (Parseval).
    const double two_sided = std::norm(transform[k]) / static_cast<double>(n);
    est.power[k] = (k == 0 || k == half) ? two_sided : 2.0 * two_sided;
  }
  est.total_power = est.power.sum();

  std::vector<double> sorted(est.power.data(), est.power.data() + est.power.size());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double max_power = est.power.maxCoeff();
  // Absolute floor keeps rounding noise in an otherwise empty spectrum from
  // registering as peaks.
  const double gate = std::max(threshold * median, 1e-9 * max_power);

  for (long k = 1; k < half; ++k) {
    const double p = est.power[k];
    if (p <= gate || p <= est.power[k - 1] || p <= est.power[k + 1]) continue;
    SpectrumPeak peak;
    peak.omega = est.omega[k];
    peak.power = p;
    long lo = k, hi = k;
    while (lo > 0 && est.power[lo] > 0.5 * p) --lo;
    while (hi < half && est.power[hi] > 0.5 * p) ++hi;
    peak.width = (hi - lo) * est.resolution;
    est.peaks.push_back(peak);
  }
  return est;
}

std::vector<double> bohr_differences(const EigenSolution& eig) {
  std::vector<double> diffs;
  const auto& e = eig.eigenvalues();
  for (int v = 0; v < eig.count(); ++v)
    for (int w = v + 1; w < eig.count(); ++w)
      diffs.push_back(std::abs(e[w] - e[v]));
  std::sort(diffs.begin(), diffs.end());
  return diffs;
}

MatchReport match_peaks(const SpectrumEstimate& spectrum, const EigenSolution& eig,
                        double tol, double scale) {
  if (tol < spectrum.resolution)
    throw ConfigError("match tolerance below the spectral resolution");
  std::vector<double> bohr = bohr_differences(eig);
  for (double& b : bohr) b *= scale;

  MatchReport report;
  report.peak_count = static_cast<int>(spectrum.peaks.size());
  int matched = 0;
  for (const SpectrumPeak& peak : spectrum.peaks) {
    PeakAssignment a;
    a.omega = peak.omega;
    double best = std::numeric_limits<double>::infinity();
    for (double b : bohr)
      if (std::abs(peak.omega - b) < std::abs(peak.omega - best)) best = b;
    a.bohr = best;
    a.residual = std::abs(peak.omega - best);
    a.matched = a.residual <= tol;
    matched += a.matched ? 1 : 0;
    report.max_residual = std::max(report.max_residual, a.residual);
    report.assignments.push_back(a);
  }
  report.matched_fraction =
      spectrum.peaks.empty() ? 1.0 : static_cast<double>(matched) / spectrum.peaks.size();
  return report;
}

}  // namespace dilatsim

#include "dilatsim/qpe.hpp"

#include "dilatsim/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <random>
#include <numbers>

namespace dilatsim {

namespace {

double wrap_unit(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;  // guard against floor rounding at the seam
  return f;
}

Eigen::VectorXcd phase_ramp(double phase, long len) {
  Eigen::VectorXcd amp(len);
  const double norm = 1.0 / std::sqrt(static_cast<double>(len));
  for (long j = 0; j < len; ++j)
    amp[j] = std::polar(norm, 2.0 * std::numbers::pi * phase * static_cast<double>(j));
  return amp;
}

}  // namespace

Eigen::VectorXcd iqft(const Eigen::VectorXcd& amplitudes) {
  const long len = amplitudes.size();
  if (!is_power_of_two(len))
    throw ConfigError("iqft length must be a power of two, got " + std::to_string(len));
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(len);
  Eigen::VectorXcd in = amplitudes;
  fft.fwd(out, in);  // sum_j in_j exp(-i 2 pi j M / len)
  return out / std::sqrt(static_cast<double>(len));
}

Eigen::VectorXcd qft(const Eigen::VectorXcd& amplitudes) {
  const long len = amplitudes.size();
  if (!is_power_of_two(len))
    throw ConfigError("qft length must be a power of two, got " + std::to_string(len));
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out(len);
  Eigen::VectorXcd in = amplitudes;
  fft.inv(out, in);  // (1/len) sum_M in_M exp(+i 2 pi j M / len)
  return out * std::sqrt(static_cast<double>(len));
}

Eigen::VectorXd qpe_distribution_for_phase(double phase, int bits) {
  if (bits < 1 || bits > 16)
    throw ConfigError("ancilla count must be in [1, 16], got " + std::to_string(bits));
  const long len = 1L << bits;
  return iqft(phase_ramp(wrap_unit(phase), len)).cwiseAbs2();
}

QpeResult qpe_run(const QpeConfig& config) {
  if (config.bits < 1 || config.bits > 16)
    throw ConfigError("ancilla count must be in [1, 16], got " +
                      std::to_string(config.bits));
  if (!(config.t_tilde > 0.0)) throw ConfigError("t_tilde must be positive");
  if (config.eigensystem == nullptr) throw ConfigError("qpe needs an eigensystem");
  const EigenSolution& eig = *config.eigensystem;

  // Expansion weights |c_v|^2 of the target over the eigensystem.
  Eigen::VectorXd weights;
  if (config.eigenstate_index) {
    const int idx = *config.eigenstate_index;
    if (idx < 0 || idx >= eig.count())
      throw ConfigError("target eigenstate index " + std::to_string(idx) +
                        " beyond computed spectrum");
    weights = Eigen::VectorXd::Zero(eig.count());
    weights[idx] = 1.0;
  } else if (config.target) {
    const Eigen::VectorXcd c = eig.expand(*config.target);
    weights = c.cwiseAbs2();
    const double completeness = weights.sum();
    if (std::abs(completeness - 1.0) > 1e-8)
      throw ConfigError("eigensystem incomplete for target: captures " +
                        std::to_string(completeness) + " of the norm");
    weights /= completeness;
  } else {
    throw ConfigError("qpe needs a target state or eigenstate index");
  }

  const long len = 1L << config.bits;
  QpeResult result;
  result.bits = config.bits;
  result.t_tilde = config.t_tilde;
  result.distribution = Eigen::VectorXd::Zero(len);
  for (int v = 0; v < eig.count(); ++v) {
    if (weights[v] == 0.0) continue;
    QpeComponent comp;
    comp.energy = eig.eigenvalues()[v];
    comp.weight = weights[v];
    comp.phase = wrap_unit(-comp.energy * config.t_tilde / (2.0 * std::numbers::pi));
    result.distribution +=
        comp.weight * iqft(phase_ramp(comp.phase, len)).cwiseAbs2();
    result.components.push_back(comp);
  }

  result.distribution.maxCoeff(&result.m_star);
  result.phase_estimate =
      static_cast<double>(result.m_star) / static_cast<double>(len);
  return result;
}

EnergyRecovery phases_to_energies(const QpeResult& result, double t_tilde,
                                  const DilatationMap& map,
                                  std::optional<double> max_energy) {
  if (!(t_tilde > 0.0)) throw ConfigError("t_tilde must be positive");
  const long len = result.distribution.size();
  const double window = 2.0 * std::numbers::pi / t_tilde;  // unaliased energy span
  const double max_p = result.distribution.maxCoeff();

  EnergyRecovery rec;
  if (max_energy && *max_energy * t_tilde >= 2.0 * std::numbers::pi) {
    rec.ambiguous = true;
    rec.warning = "aliasing bound violated: max energy * t_tilde = " +
                  std::to_string(*max_energy * t_tilde) +
                  " >= 2 pi; energies are reported modulo " + std::to_string(window);
  }

  // Cyclic local maxima of the distribution carrying a meaningful share of
  // the strongest peak.
  const double gate = 0.25 * max_p;
  for (long m = 0; m < len; ++m) {
    const double p = result.distribution[m];
    const double prev = result.distribution[(m + len - 1) % len];
    const double next = result.distribution[(m + 1) % len];
    if (p < gate || p < prev || p <= next) continue;
    EnergyEstimate est;
    est.m = m;
    est.probability = p;
    est.phase = static_cast<double>(m) / static_cast<double>(len);
    est.energy_simulator = wrap_unit(-est.phase) * window;
    est.energy_electron = est.energy_simulator / map.lambda;
    if (rec.ambiguous && max_energy)
      for (double e = est.energy_simulator + window; e <= *max_energy; e += window)
        est.alias_branches.push_back(e);
    rec.estimates.push_back(est);
  }
  return rec;
}

std::vector<long> sample_measurements(const QpeResult& result, long shots,
                                      std::uint64_t seed) {
  if (shots < 0) throw ConfigError("shot count must be nonnegative");
  const long len = result.distribution.size();
  Eigen::VectorXd cdf(len);
  double acc = 0.0;
  for (long m = 0; m < len; ++m) {
    acc += result.distribution[m];
    cdf[m] = acc;
  }

  std::mt19937_64 rng(seed);
  std::vector<long> counts(len, 0);
  for (long s = 0; s < shots; ++s) {
    // uniform in [0, total) from 53 random bits
    const double u = acc * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const long m = std::lower_bound(cdf.data(), cdf.data() + len, u) - cdf.data();
    ++counts[std::min(m, len - 1)];
  }
  return counts;
}

}  // namespace dilatsim

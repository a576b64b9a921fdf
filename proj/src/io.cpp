#include "dilatsim/io.hpp"

#include "dilatsim/errors.hpp"

#include <cstdio>
#include <fstream>

namespace dilatsim {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path.string());
  out << content;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string trajectory_csv(const Trajectory& traj,
                           const std::vector<MeasurementRecord>& extras) {
  std::string csv = "time,norm,energy";
  for (const MeasurementRecord& rec : extras) csv += "," + rec.observable.id();
  csv += "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    csv += format_double(traj.times[i]) + "," + format_double(traj.norms[i]) + "," +
           format_double(traj.energies[i]);
    for (const MeasurementRecord& rec : extras) {
      const auto v = rec.values.at(i);
      csv += "," + (v.imag() == 0.0
                        ? format_double(v.real())
                        : format_double(v.real()) + "+" + format_double(v.imag()) + "i");
    }
    csv += "\n";
  }
  return csv;
}

std::string spectrum_csv(const SpectrumEstimate& est) {
  std::string csv = "omega,power\n";
  for (long k = 0; k < est.omega.size(); ++k)
    csv += format_double(est.omega[k]) + "," + format_double(est.power[k]) + "\n";
  return csv;
}

Json peaks_json(const SpectrumEstimate& est, const MatchReport* match) {
  Json peaks = Json::array();
  for (std::size_t i = 0; i < est.peaks.size(); ++i) {
    Json p;
    p["omega"] = est.peaks[i].omega;
    p["amplitude"] = est.peaks[i].power;
    p["width"] = est.peaks[i].width;
    if (match && i < match->assignments.size()) {
      p["matched_bohr"] = match->assignments[i].bohr;
      p["residual"] = match->assignments[i].residual;
      p["matched"] = match->assignments[i].matched;
    }
    peaks.push_back(p);
  }
  Json j;
  j["resolution"] = est.resolution;
  j["window"] = est.window == Window::hann ? "hann" : "none";
  j["threshold"] = est.threshold;
  j["total_power"] = est.total_power;
  j["peaks"] = peaks;
  if (match) {
    j["matched_fraction"] = match->matched_fraction;
    j["max_residual"] = match->max_residual;
  }
  return j;
}

Json qpe_json(const QpeResult& result, const EnergyRecovery& energies,
              const std::vector<long>* counts) {
  Json j;
  j["n"] = result.bits;
  j["t_tilde"] = result.t_tilde;
  j["m_star"] = result.m_star;
  j["phase"] = result.phase_estimate;
  j["distribution"] = std::vector<double>(
      result.distribution.data(), result.distribution.data() + result.distribution.size());

  Json comps = Json::array();
  for (const QpeComponent& c : result.components) {
    Json e;
    e["energy"] = c.energy;
    e["weight"] = c.weight;
    e["phase"] = c.phase;
    comps.push_back(e);
  }
  j["components"] = comps;

  Json ests = Json::array();
  for (const EnergyEstimate& est : energies.estimates) {
    Json e;
    e["m"] = est.m;
    e["probability"] = est.probability;
    e["phase"] = est.phase;
    e["energy_simulator"] = est.energy_simulator;
    e["energy_electron"] = est.energy_electron;
    if (!est.alias_branches.empty()) e["alias_branches"] = est.alias_branches;
    ests.push_back(e);
  }
  j["energies"] = ests;
  if (energies.ambiguous) j["aliasing_warning"] = energies.warning;
  if (counts) j["counts"] = *counts;
  return j;
}

}  // namespace dilatsim

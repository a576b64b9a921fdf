#pragma once

#include "dilatsim/qpe.hpp"
#include "dilatsim/readout.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace dilatsim {

// All result files are deterministic: numbers are written with enough
// digits to round-trip exactly, and field order is fixed.
using Json = nlohmann::ordered_json;

std::string format_double(double v);  // up to 17 significant digits

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const Json& j);

// CSV: time, norm, energy, plus one column per extra observable record.
std::string trajectory_csv(const Trajectory& traj,
                           const std::vector<MeasurementRecord>& extras = {});
// CSV: omega, power.
std::string spectrum_csv(const SpectrumEstimate& est);

Json peaks_json(const SpectrumEstimate& est, const MatchReport* match);
Json qpe_json(const QpeResult& result, const EnergyRecovery& energies,
              const std::vector<long>* counts);

}  // namespace dilatsim

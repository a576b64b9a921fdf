#pragma once

#include "dilatsim/evolve.hpp"
#include "dilatsim/io.hpp"
#include "dilatsim/readout.hpp"

#include <map>
#include <string>
#include <vector>

namespace dilatsim {

// Sectioned key-value configuration with a strict schema: unknown sections
// or keys are rejected, every value is validated before any computation.
// Any entry can be overridden with a dotted path "section.key=value".
class RunConfig {
 public:
  RunConfig();  // defaults only

  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text);
  // Re-ingest a manifest's config echo.
  static RunConfig from_json(const Json& echo);

  void set(const std::string& dotted_path, const std::string& value);

  const std::string& get(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;
  std::vector<int> get_ints(const std::string& section, const std::string& key) const;

  // Typed views assembled from the raw entries.
  SystemSpec system() const;
  GridSpec grid() const;
  DilatationMap mapping() const;
  WaveFunction initial_state(const HamiltonianOperator& h) const;
  PropagationPlan propagation(double duration) const;
  double duration() const;
  ObservableSpec observable(const SystemSpec& spec) const;
  Window window() const;

  Json echo() const;  // every entry, post-override

 private:
  void ingest_line(const std::string& line, std::string& section, int line_no);

  // section -> key -> value, seeded with every known key's default
  std::map<std::string, std::map<std::string, std::string>> entries_;
};

}  // namespace dilatsim

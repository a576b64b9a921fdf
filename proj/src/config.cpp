#include "dilatsim/config.hpp"

#include "dilatsim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dilatsim {

namespace {

// Schema: section -> key -> default value (as text).
const std::map<std::string, std::map<std::string, std::string>>& schema() {
  static const std::map<std::string, std::map<std::string, std::string>> s = {
      {"system",
       {{"particles", "1"},
        {"dimensions", "1"},
        {"mass", "1.0"},
        {"pair_coefficient", "0.0"},
        {"softening", "0.5"},
        {"potential", "none"},  // none | harmonic | hardwall | tabulated
        {"omega", "1.0"},
        {"wall_width", "8.0"},
        {"wall_height", "1e4"},
        {"potential_file", ""},
        {"boundary", "periodic"}}},  // periodic | wall
      {"grid", {{"points", "64"}, {"extent", "10.0"}}},
      {"mapping", {{"species", ""}, {"mass_ratio", "1.0"}, {"charge", "1.0"}}},
      {"initial",
       {{"kind", "gaussian"},  // gaussian | eigenstate | superposition
        {"center", "0.0"},
        {"width", "1.0"},
        {"momentum", "0.0"},
        {"index", "0"},
        {"indices", "0,1"},
        {"weights", "0.7071067811865476,0.7071067811865476"}}},
      {"propagation",
       {{"dt", "1e-3"},
        {"duration", "10.0"},
        {"stride", "10"},
        {"method", "split"}}},  // split | dense
      {"readout",
       {{"observable", "density"},  // density | position | autocorrelation
        {"probe", "1.0"},
        {"axis", "0"},
        {"window", "hann"},  // hann | none
        {"threshold", "5.0"},
        {"eigenpairs", "8"}}},
      {"qpe",
       {{"bits", "8"},
        {"t_tilde", "0.1"},
        {"target_index", "-1"},  // -1: use [initial]
        {"shots", "0"},
        {"seed", "1"}}},
      {"output", {{"directory", "out"}, {"formats", "csv,json"}}},
      {"verify",
       {{"eigenpairs", "6"},
        {"readout_duration", "100.0"},
        {"unscaled_potential", "false"}}},  // negative control: skip V scaling
  };
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": not a number: '" + v + "'");
  }
}

int parse_int(const std::string& section, const std::string& key,
              const std::string& v) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("[" + section + "] " + key + ": not an integer: '" + v + "'");
  }
}

}  // namespace

RunConfig::RunConfig() : entries_(schema()) {}

void RunConfig::ingest_line(const std::string& raw, std::string& section, int line_no) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  line = trim(line);
  if (line.empty()) return;

  if (line.front() == '[') {
    if (line.back() != ']')
      throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
    section = trim(line.substr(1, line.size() - 2));
    if (!schema().count(section))
      throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                        section + "]");
    return;
  }

  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
  if (section.empty())
    throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (!schema().at(section).count(key))
    throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                      "' in section [" + section + "]");
  entries_[section][key] = value;
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) cfg.ingest_line(line, section, ++line_no);
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

RunConfig RunConfig::from_json(const Json& echo) {
  RunConfig cfg;
  for (const auto& [section, keys] : echo.items()) {
    if (!schema().count(section))
      throw ConfigError("config echo has unknown section [" + section + "]");
    for (const auto& [key, value] : keys.items()) {
      if (!schema().at(section).count(key))
        throw ConfigError("config echo has unknown key '" + key + "' in [" + section + "]");
      cfg.entries_[section][key] = value.get<std::string>();
    }
  }
  return cfg;
}

void RunConfig::set(const std::string& dotted_path, const std::string& value) {
  const auto dot = dotted_path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override must look like section.key=value, got '" +
                      dotted_path + "'");
  const std::string section = trim(dotted_path.substr(0, dot));
  const std::string key = trim(dotted_path.substr(dot + 1));
  if (!schema().count(section))
    throw ConfigError("unknown section [" + section + "] in override");
  if (!schema().at(section).count(key))
    throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  entries_[section][key] = trim(value);
}

const std::string& RunConfig::get(const std::string& section,
                                  const std::string& key) const {
  return entries_.at(section).at(key);
}

double RunConfig::get_double(const std::string& section, const std::string& key) const {
  return parse_double(section, key, get(section, key));
}

int RunConfig::get_int(const std::string& section, const std::string& key) const {
  return parse_int(section, key, get(section, key));
}

bool RunConfig::get_bool(const std::string& section, const std::string& key) const {
  const std::string& v = get(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("[" + section + "] " + key + ": not a boolean: '" + v + "'");
}

std::vector<double> RunConfig::get_doubles(const std::string& section,
                                           const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split(get(section, key), ','))
    out.push_back(parse_double(section, key, part));
  return out;
}

std::vector<int> RunConfig::get_ints(const std::string& section,
                                     const std::string& key) const {
  std::vector<int> out;
  for (const std::string& part : split(get(section, key), ','))
    out.push_back(parse_int(section, key, part));
  return out;
}

SystemSpec RunConfig::system() const {
  SystemSpec spec;
  spec.particles = get_int("system", "particles");
  spec.dimensions = get_int("system", "dimensions");
  spec.mass = get_double("system", "mass");
  spec.pair_coefficient = get_double("system", "pair_coefficient");
  spec.softening = get_double("system", "softening");

  const std::string& pot = get("system", "potential");
  if (pot == "none")
    spec.external = ExternalPotential::none();
  else if (pot == "harmonic")
    spec.external =
        ExternalPotential::harmonic_from_omega(get_double("system", "omega"), spec.mass);
  else if (pot == "hardwall")
    spec.external = ExternalPotential::hard_wall(get_double("system", "wall_width"),
                                                 get_double("system", "wall_height"));
  else if (pot == "tabulated")
    spec.external = ExternalPotential::tabulated_from_file(get("system", "potential_file"));
  else
    throw ConfigError("[system] potential: unknown kind '" + pot + "'");

  const std::string& boundary = get("system", "boundary");
  if (boundary == "periodic")
    spec.boundary = Boundary::periodic;
  else if (boundary == "wall")
    spec.boundary = Boundary::masked_wall;
  else
    throw ConfigError("[system] boundary: unknown kind '" + boundary + "'");

  spec.validate();
  return spec;
}

GridSpec RunConfig::grid() const {
  const int rank = system().grid_rank();
  std::vector<int> points = get_ints("grid", "points");
  std::vector<double> extents = get_doubles("grid", "extent");
  if (points.size() == 1) points.assign(rank, points[0]);
  if (extents.size() == 1) extents.assign(rank, extents[0]);
  if (static_cast<int>(points.size()) != rank ||
      static_cast<int>(extents.size()) != rank)
    throw ConfigError("[grid] points/extent need 1 or N*d entries");
  std::vector<Axis> axes(rank);
  for (int a = 0; a < rank; ++a) axes[a] = Axis{points[a], extents[a]};
  return GridSpec(std::move(axes));
}

DilatationMap RunConfig::mapping() const {
  const std::string& species = get("mapping", "species");
  const double mu = species.empty() ? get_double("mapping", "mass_ratio")
                                    : species_mass_ratio(species);
  return derive_dilatation(mu, get_double("mapping", "charge"));
}

WaveFunction RunConfig::initial_state(const HamiltonianOperator& h) const {
  const std::string& kind = get("initial", "kind");
  if (kind == "gaussian") {
    const int rank = h.grid().rank();
    auto broadcast = [&](const char* key) {
      std::vector<double> v = get_doubles("initial", key);
      if (v.size() == 1) v.assign(rank, v[0]);
      if (static_cast<int>(v.size()) != rank)
        throw ConfigError(std::string("[initial] ") + key + ": need 1 or N*d entries");
      return Eigen::Map<Eigen::VectorXd>(v.data(), rank).eval();
    };
    GaussianState g;
    g.center = broadcast("center");
    g.width = broadcast("width");
    g.momentum = broadcast("momentum");
    return initial_gaussian(g, h.grid());
  }
  if (kind == "eigenstate") return initial_eigenstate(h, get_int("initial", "index"));
  if (kind == "superposition") {
    const std::vector<int> indices = get_ints("initial", "indices");
    const std::vector<double> weights = get_doubles("initial", "weights");
    std::vector<std::complex<double>> cw(weights.begin(), weights.end());
    return initial_superposition(h, indices, cw);
  }
  throw ConfigError("[initial] kind: unknown kind '" + kind + "'");
}

PropagationPlan RunConfig::propagation(double duration) const {
  const std::string& method = get("propagation", "method");
  PropagationPlan::Method m;
  if (method == "split")
    m = PropagationPlan::Method::split_operator;
  else if (method == "dense")
    m = PropagationPlan::Method::dense_exponential;
  else
    throw ConfigError("[propagation] method: unknown method '" + method + "'");
  return PropagationPlan::for_duration(duration, get_double("propagation", "dt"), m,
                                       get_int("propagation", "stride"));
}

double RunConfig::duration() const { return get_double("propagation", "duration"); }

ObservableSpec RunConfig::observable(const SystemSpec& spec) const {
  ObservableSpec obs;
  const std::string& kind = get("readout", "observable");
  if (kind == "density") {
    obs.kind = ObservableSpec::Kind::density_at_point;
    std::vector<double> probe = get_doubles("readout", "probe");
    if (probe.size() == 1) probe.assign(spec.dimensions, probe[0]);
    if (static_cast<int>(probe.size()) != spec.dimensions)
      throw ConfigError("[readout] probe: need 1 or d entries");
    obs.probe = Eigen::Map<Eigen::VectorXd>(probe.data(), spec.dimensions).eval();
  } else if (kind == "position") {
    obs.kind = ObservableSpec::Kind::position_expectation;
    obs.axis = get_int("readout", "axis");
  } else if (kind == "autocorrelation") {
    obs.kind = ObservableSpec::Kind::autocorrelation;
  } else {
    throw ConfigError("[readout] observable: unknown kind '" + kind + "'");
  }
  return obs;
}

Window RunConfig::window() const {
  const std::string& w = get("readout", "window");
  if (w == "hann") return Window::hann;
  if (w == "none") return Window::none;
  throw ConfigError("[readout] window: unknown window '" + w + "'");
}

Json RunConfig::echo() const {
  Json j;
  for (const auto& [section, keys] : entries_) {
    Json s;
    for (const auto& [key, value] : keys) s[key] = value;
    j[section] = s;
  }
  return j;
}

}  // namespace dilatsim

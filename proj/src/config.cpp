// Copyright 2026 The whqrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <charconv>
#include <cmath>
#include <sstream>

#include "whqrom/error.hpp"
#include "whqrom/molham.hpp"
#include "whqrom/sample_io.hpp"

namespace whqrom::molham {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& s, std::size_t line, const std::string& key) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(line, key + ": not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, std::size_t line, const std::string& key) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(line, key + ": not an integer: '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, std::size_t line, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError(line, key + ": not a boolean: '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

void positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be positive");
}

}  // namespace

SystemKind parse_system(const std::string& name) {
  if (name == "water") return SystemKind::Water;
  if (name == "modes") return SystemKind::Modes;
  throw ConfigError("system", "unknown system '" + name + "'");
}

std::string system_name(SystemKind kind) { return kind == SystemKind::Water ? "water" : "modes"; }

void ToyMoleculeSpec::validate() const {
  if (j < 0) throw ConfigError("j", "must be non-negative");
  if (kind == SystemKind::Water) {
    positive(mass_h, "mass_h");
    positive(mass_o, "mass_o");
    positive(omega, "omega");
    positive(r0, "r0");
    if (n_r < 2) throw ConfigError("n_r", "must be at least 2");
    if (n_theta < 2) throw ConfigError("n_theta", "must be at least 2");
    if (!(theta_max > 0.0) || theta_max > 1.0)
      throw ConfigError("theta_max", "must lie in (0, 1] (units of pi/2)");
    if (quadrature_r != 0 && quadrature_r < n_r)
      throw ConfigError("quadrature_r", "must be 0 or at least n_r");
    if (quadrature_theta != 0 && quadrature_theta < n_theta)
      throw ConfigError("quadrature_theta", "must be 0 or at least n_theta");
    if (morse_de < 0.0) throw ConfigError("morse_de", "must be non-negative");
    positive(morse_a, "morse_a");
    if (bend_k < 0.0) throw ConfigError("bend_k", "must be non-negative");
    return;
  }
  if (modes.empty()) throw ConfigError("mode_n", "at least one mode is required");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    positive(modes[i].mass_da, "mode_mass" + idx);
    positive(modes[i].omega_cm, "mode_omega" + idx);
    if (modes[i].n < 2) throw ConfigError("mode_n" + idx, "must be at least 2");
    if (quadrature_r != 0 && quadrature_r < modes[i].n)
      throw ConfigError("quadrature_r", "must be 0 or at least every mode_n");
  }
}

std::vector<int> ToyMoleculeSpec::dims() const {
  if (kind == SystemKind::Water) return {n_r, n_r, n_theta};
  std::vector<int> d;
  for (const auto& m : modes) d.push_back(m.n);
  return d;
}

std::uint64_t ToyMoleculeSpec::dimension() const {
  std::uint64_t n = 1;
  for (int d : dims()) n *= static_cast<std::uint64_t>(d);
  return n;
}

ToyMoleculeSpec water_default() { return ToyMoleculeSpec{}; }

ToyMoleculeSpec single_mode(double mass_da, double omega_cm, int n) {
  ToyMoleculeSpec s;
  s.kind = SystemKind::Modes;
  s.modes = {Mode{mass_da, omega_cm, n}};
  return s;
}

ToyMoleculeSpec parse_config(const std::string& text) {
  ToyMoleculeSpec s;
  std::vector<double> mode_mass, mode_omega;
  std::vector<int> mode_n;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string val = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || val.empty()) throw ParseError(line, "expected 'key = value'");
    auto num = [&] { return to_double(val, line, key); };
    if (key == "system") s.kind = parse_system(val);
    else if (key == "mass_h") s.mass_h = num();
    else if (key == "mass_o") s.mass_o = num();
    else if (key == "omega") s.omega = num();
    else if (key == "r0") s.r0 = num();
    else if (key == "n_r") s.n_r = to_int(val, line, key);
    else if (key == "n_theta") s.n_theta = to_int(val, line, key);
    else if (key == "theta_max") s.theta_max = num();
    else if (key == "morse_de") s.morse_de = num();
    else if (key == "morse_a") s.morse_a = num();
    else if (key == "bend_k") s.bend_k = num();
    else if (key == "theta0") s.theta0_deg = num();
    else if (key == "stretch_coupling") s.stretch_coupling = num();
    else if (key == "decoupled") s.decoupled = to_bool(val, line, key);
    else if (key == "quadrature_r") s.quadrature_r = to_int(val, line, key);
    else if (key == "quadrature_theta") s.quadrature_theta = to_int(val, line, key);
    else if (key == "j") s.j = to_int(val, line, key);
    else if (key == "mode_coupling") s.mode_coupling = num();
    else if (key == "mode_mass") {
      for (const auto& v : split_list(val)) mode_mass.push_back(to_double(v, line, key));
    } else if (key == "mode_omega") {
      for (const auto& v : split_list(val)) mode_omega.push_back(to_double(v, line, key));
    } else if (key == "mode_n") {
      for (const auto& v : split_list(val)) mode_n.push_back(to_int(v, line, key));
    } else {
      throw ConfigError(key, "unknown key (line " + std::to_string(line) + ")");
    }
  }
  if (!mode_n.empty() || !mode_mass.empty() || !mode_omega.empty()) {
    if (mode_mass.size() != mode_n.size() || mode_omega.size() != mode_n.size())
      throw ConfigError("mode_n", "mode_mass, mode_omega and mode_n must have equal length");
    for (std::size_t i = 0; i < mode_n.size(); ++i)
      s.modes.push_back(Mode{mode_mass[i], mode_omega[i], mode_n[i]});
  }
  s.validate();
  return s;
}

ToyMoleculeSpec load_config(const std::string& path) { return parse_config(io::read_text(path)); }

nlohmann::json to_json(const ToyMoleculeSpec& s) {
  nlohmann::json j;
  j["system"] = system_name(s.kind);
  j["j"] = s.j;
  if (s.kind == SystemKind::Water) {
    j["mass_h"] = s.mass_h;
    j["mass_o"] = s.mass_o;
    j["omega"] = s.omega;
    j["r0"] = s.r0;
    j["n_r"] = s.n_r;
    j["n_theta"] = s.n_theta;
    j["theta_max"] = s.theta_max;
    j["morse_de"] = s.morse_de;
    j["morse_a"] = s.morse_a;
    j["bend_k"] = s.bend_k;
    j["theta0"] = s.theta0_deg;
    j["stretch_coupling"] = s.stretch_coupling;
    j["decoupled"] = s.decoupled;
    j["quadrature_r"] = s.quadrature_r;
    j["quadrature_theta"] = s.quadrature_theta;
  } else {
    auto& arr = j["modes"] = nlohmann::json::array();
    for (const auto& m : s.modes) arr.push_back({{"mass", m.mass_da}, {"omega", m.omega_cm}, {"n", m.n}});
    j["mode_coupling"] = s.mode_coupling;
  }
  return j;
}

}  // namespace whqrom::molham

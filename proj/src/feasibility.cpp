#include "decolab/feasibility.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "decolab/despagnat.hpp"

namespace decolab::feasibility {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError(std::string(what) + " must be finite and > 0");
}

}  // namespace

const std::vector<SpeciesPreset>& builtin_species() {
  static const std::vector<SpeciesPreset> table{
      {"neutron", 1.67e-27, 1e-26},
      {"proton", 1.67e-27, 1.4e-26},
      // Planck mass carrying one magneton e hbar / (2 M_P).
      {"planck-mass", 2.18e-8, 3.87e-46},
  };
  return table;
}

namespace {

double number_field(const nlohmann::json& rec, const char* key, const std::string& path) {
  if (!rec.contains(key) || !rec[key].is_number()) {
    throw ParameterError("preset file " + path + ": record needs numeric \"" + key + "\"");
  }
  const double x = rec[key].get<double>();
  require_positive(x, key);
  return x;
}

std::string string_field(const nlohmann::json& rec, const char* key, const std::string& path) {
  if (!rec.contains(key) || !rec[key].is_string()) {
    throw ParameterError("preset file " + path + ": record needs string \"" + key + "\"");
  }
  return rec[key].get<std::string>();
}

}  // namespace

const std::vector<ScenarioPreset>& builtin_scenarios() {
  static const std::vector<ScenarioPreset> table{
      {"nucleon", "proton", "neutron", 1.0, 1e-13, 1e-2, 10.0},
  };
  return table;
}

PresetCatalog load_presets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open preset file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("preset file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParameterError("preset file " + path + ": expected a JSON object");
  PresetCatalog out;
  if (doc.contains("species")) {
    if (!doc["species"].is_array()) throw ParameterError("preset file " + path + ": \"species\" must be an array");
    for (const auto& rec : doc["species"]) {
      if (!rec.is_object()) throw ParameterError("preset file " + path + ": species records must be objects");
      out.species.push_back({string_field(rec, "name", path), number_field(rec, "mass_kg", path),
                             number_field(rec, "gamma_J_per_T", path)});
    }
  }
  if (doc.contains("scenarios")) {
    if (!doc["scenarios"].is_array()) throw ParameterError("preset file " + path + ": \"scenarios\" must be an array");
    for (const auto& rec : doc["scenarios"]) {
      if (!rec.is_object()) throw ParameterError("preset file " + path + ": scenario records must be objects");
      out.scenarios.push_back({string_field(rec, "name", path), string_field(rec, "needle", path),
                               string_field(rec, "environment", path), number_field(rec, "B_T", path),
                               number_field(rec, "d_m", path), number_field(rec, "L_m", path),
                               number_field(rec, "v_m_per_s", path)});
    }
  }
  return out;
}

std::optional<SpeciesPreset> find_species(const std::string& name, const PresetCatalog& extra) {
  for (const auto& sp : extra.species)
    if (sp.name == name) return sp;
  for (const auto& sp : builtin_species())
    if (sp.name == name) return sp;
  return std::nullopt;
}

std::optional<ScenarioPreset> find_scenario(const std::string& name, const PresetCatalog& extra) {
  for (const auto& sc : extra.scenarios)
    if (sc.name == name) return sc;
  for (const auto& sc : builtin_scenarios())
    if (sc.name == name) return sc;
  return std::nullopt;
}

PhysicalScenario make_scenario(const ScenarioPreset& preset, std::size_t n, const PresetCatalog& extra) {
  const auto needle = find_species(preset.needle, extra);
  const auto env = find_species(preset.environment, extra);
  if (!needle) throw ParameterError("unknown species: " + preset.needle);
  if (!env) throw ParameterError("unknown species: " + preset.environment);
  PhysicalScenario s;
  s.mass = env->mass;
  s.gamma1 = needle->gamma;
  s.gamma2 = env->gamma;
  s.B = preset.B;
  s.d = preset.d;
  s.L = preset.L;
  s.v = preset.v;
  s.tau = 2.0 * preset.L / preset.v;
  s.N = n;
  s.validate();
  return s;
}

PhysicalScenario make_scenario(const std::string& preset_name, std::size_t n, const PresetCatalog& extra) {
  const auto preset = find_scenario(preset_name, extra);
  if (!preset) throw ParameterError("unknown scenario preset: " + preset_name);
  return make_scenario(*preset, n, extra);
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::greater: return ">";
    case Relation::less: return "<";
    case Relation::much_greater: return ">>";
    case Relation::much_less: return "<<";
    case Relation::at_most: return "<=";
  }
  return "?";
}

Check make_check(std::string name, double lhs, Relation rel, double rhs) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = rel;
  const double up = std::log10(lhs) - std::log10(rhs);
  switch (rel) {
    case Relation::greater:
      c.pass = lhs > rhs;
      c.margin = up;
      break;
    case Relation::much_greater:
      c.pass = lhs > kMuchGreater * rhs;
      c.margin = up;
      break;
    case Relation::less:
      c.pass = lhs < rhs;
      c.margin = -up;
      break;
    case Relation::much_less:
      c.pass = lhs * kMuchGreater < rhs;
      c.margin = -up;
      break;
    case Relation::at_most:
      c.pass = lhs <= rhs;
      c.margin = -up;
      break;
  }
  return c;
}

const Check* FeasibilityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

FeasibilityReport aggregate(std::vector<Check> checks) {
  FeasibilityReport r;
  r.checks = std::move(checks);
  r.overall = !r.checks.empty();
  for (const auto& c : r.checks) r.overall = r.overall && c.pass;
  return r;
}

Check decoherence_bound(const PhysicalScenario& s) {
  s.validate();
  const auto& c = s.constants;
  const double lhs = c.mu0 * s.gamma1 * s.gamma2 / (c.hbar * s.d * s.d * s.v);
  return make_check("decoherence_bound", lhs, Relation::greater, 1.0);
}

double transverse_velocity(double mass, double d, double hbar) {
  require_positive(mass, "mass");
  require_positive(d, "d");
  require_positive(hbar, "hbar");
  return hbar / (mass * d);
}

double transverse_velocity(const PhysicalScenario& s) {
  return transverse_velocity(s.mass, s.d, s.constants.hbar);
}

double packet_width(double t, double mass, double delta, double hbar) {
  if (!(t >= 0.0)) throw ParameterError("packet_width: t must be >= 0");
  require_positive(mass, "mass");
  require_positive(delta, "delta");
  const double spread = 2.0 * hbar * t / (mass * delta * delta);
  return 0.5 * delta * std::hypot(1.0, spread);
}

double min_dispersion(double t, double mass, double hbar) {
  if (!(t >= 0.0)) throw ParameterError("min_dispersion: t must be >= 0");
  require_positive(mass, "mass");
  return std::sqrt(hbar * t / mass);
}

double optimal_packet_delta(double t, double mass, double hbar) {
  require_positive(t, "t");
  require_positive(mass, "mass");
  return std::sqrt(2.0 * hbar * t / mass);
}

double tau_upper_bound(const PhysicalScenario& s) {
  s.validate();
  const auto& c = s.constants;
  const double root = s.mass * std::cbrt(s.gamma1 * s.gamma2 * c.mu0 * s.gamma1 * s.gamma2 * c.mu0) /
                      (std::pow(c.hbar, 5.0 / 3.0) * static_cast<double>(s.N));
  return root * root * root;
}

ImpactWindow impact_window(const PhysicalScenario& s) {
  s.validate();
  const auto& c = s.constants;
  ImpactWindow w;
  w.d_min = std::sqrt(c.hbar * static_cast<double>(s.N) * s.tau / s.mass);
  w.d_max = std::cbrt(c.mu0 * s.gamma1 * s.gamma2 * s.tau / c.hbar);
  return w;
}

double mass_moment_rhs(double n, const realclock::ClockChannel& ch, const PhysicalConstants& c) {
  ch.validate();
  if (!(n >= 1.0) || !std::isfinite(n)) throw ParameterError("mass_moment_rhs: n must be finite and >= 1");
  const double a = ch.clock_exponent;
  const double power = (7.0 - 6.0 * a) / (6.0 - 6.0 * a);
  return std::cbrt(ch.t_planck) * std::pow(c.hbar, 5.0 / 3.0) * std::pow(n, power) /
         std::pow(c.mu0, 2.0 / 3.0);
}

MassMoment mass_moment_threshold(const PhysicalScenario& s, double n, const realclock::ClockChannel& ch) {
  s.validate();
  MassMoment out;
  out.lhs = s.mass * std::cbrt(s.gamma1 * s.gamma2 * s.gamma1 * s.gamma2);
  out.rhs = mass_moment_rhs(n, ch, s.constants);
  out.check = make_check("mass_moment", out.lhs, Relation::much_greater, out.rhs);
  return out;
}

double required_moment(double mass, double n, const realclock::ClockChannel& ch, const PhysicalConstants& c) {
  require_positive(mass, "mass");
  return std::pow(mass_moment_rhs(n, ch, c) / mass, 0.75);
}

double packet_chain_d_max(const PhysicalScenario& s) {
  s.validate();
  const auto& c = s.constants;
  return 0.1 * c.mu0 * s.gamma1 * s.gamma2 * s.mass / (c.hbar * c.hbar);
}

FeasibilityReport packet_chain_analysis(const PhysicalScenario& s) {
  s.validate();
  const auto& c = s.constants;
  const double T = s.total_time();
  const double delta = 0.1 * s.d;
  const double width = packet_width(T, s.mass, delta, c.hbar);
  const double growth = c.hbar * T / (delta * s.mass);
  const double length = s.v * T;
  const double length_cap = c.mu0 * s.gamma1 * s.gamma2 * T / (c.hbar * s.d * s.d);

  std::vector<Check> checks;
  checks.push_back(make_check("packet_growth", growth, Relation::at_most, width));
  checks.push_back(make_check("travel_length", length, Relation::less, length_cap));
  checks.push_back(make_check("dispersion_below_length", width, Relation::less, length));
  checks.push_back(make_check("impact_parameter", s.d, Relation::at_most, packet_chain_d_max(s)));
  return aggregate(std::move(checks));
}

FeasibilityReport full_report(const PhysicalScenario& scenario, std::size_t n) {
  PhysicalScenario s = scenario;
  s.N = n;
  s.validate();
  const auto& c = s.constants;
  const auto ch = realclock::ClockChannel::from(c);

  std::vector<Check> checks;
  checks.push_back(decoherence_bound(s));
  checks.push_back(make_check("dispersion", std::sqrt(c.hbar * static_cast<double>(n) * s.tau / s.mass),
                              Relation::less, s.d));
  const double f = c.mu0 * s.gamma1 * s.gamma2 / (c.hbar * s.d * s.d * s.d);
  const double zeeman = s.B * std::abs(s.gamma_minus()) / c.hbar;
  checks.push_back(make_check("weak_coupling", f, Relation::less, kWeakCouplingRatio * zeeman));
  const auto k = despagnat::k_exponent(n, s.B, s.gamma1, s.gamma2, s.tau, ch, c.hbar);
  checks.push_back(make_check("k_exponent", k.k, Relation::less, 1.0));
  checks.push_back(make_check("tau_bound", s.tau, Relation::less, tau_upper_bound(s)));
  checks.push_back(mass_moment_threshold(s, static_cast<double>(n), ch).check);
  auto chain = packet_chain_analysis(s);
  checks.push_back(*chain.find("impact_parameter"));
  return aggregate(std::move(checks));
}

}  // namespace decolab::feasibility

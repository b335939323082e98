#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decolab/realclock.hpp"
#include "decolab/types.hpp"

namespace decolab::feasibility {

/// Ratio that operationalizes "much greater than".
inline constexpr double kMuchGreater = 10.0;
/// Bound on f hbar / (B |G-|) for the pointer-basis condition.
inline constexpr double kWeakCouplingRatio = 0.1;

struct SpeciesPreset {
  std::string name;
  double mass = 0.0;   // kg
  double gamma = 0.0;  // J/T
};

/// neutron, proton, planck-mass.
const std::vector<SpeciesPreset>& builtin_species();

/// Named experiment geometry: needle species, environment species, field and flight.
struct ScenarioPreset {
  std::string name;
  std::string needle;
  std::string environment;
  double B = 1.0;
  double d = 1e-13;
  double L = 1e-2;
  double v = 10.0;
};

/// "nucleon": proton needle, neutron environment.
const std::vector<ScenarioPreset>& builtin_scenarios();

struct PresetCatalog {
  std::vector<SpeciesPreset> species;
  std::vector<ScenarioPreset> scenarios;
};

/// Reads a JSON preset file:
///   {"species":   [{"name", "mass_kg", "gamma_J_per_T"}, ...],
///    "scenarios": [{"name", "needle", "environment", "B_T", "d_m", "L_m", "v_m_per_s"}, ...]}
/// Either array may be absent.
PresetCatalog load_presets(const std::string& path);

/// Looks `name` up in `extra` first, then in the built-in table.
std::optional<SpeciesPreset> find_species(const std::string& name, const PresetCatalog& extra = {});
std::optional<ScenarioPreset> find_scenario(const std::string& name, const PresetCatalog& extra = {});

/// Resolves a scenario preset into a PhysicalScenario with tau = 2L/v.
PhysicalScenario make_scenario(const ScenarioPreset& preset, std::size_t n, const PresetCatalog& extra = {});
PhysicalScenario make_scenario(const std::string& preset_name, std::size_t n, const PresetCatalog& extra = {});

enum class Relation { greater, less, much_greater, much_less, at_most };

const char* to_string(Relation r);

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::greater;
  bool pass = false;
  /// log10 of the ratio oriented so that larger means further inside the pass region.
  double margin = 0.0;
};

/// Evaluates lhs (relation) rhs.
Check make_check(std::string name, double lhs, Relation rel, double rhs);

struct FeasibilityReport {
  std::vector<Check> checks;
  bool overall = false;

  const Check* find(const std::string& name) const;
};

/// Conjunction of all member checks.
FeasibilityReport aggregate(std::vector<Check> checks);

/// mu g1 g2 / (hbar d^2 v) > 1
Check decoherence_bound(const PhysicalScenario& s);

/// hbar / (m d)
double transverse_velocity(double mass, double d, double hbar = PhysicalConstants{}.hbar);
double transverse_velocity(const PhysicalScenario& s);

/// (delta/2) sqrt(1 + 4 hbar^2 t^2 / (m^2 delta^4))
double packet_width(double t, double mass, double delta, double hbar = PhysicalConstants{}.hbar);

/// sqrt(hbar t / m)
double min_dispersion(double t, double mass, double hbar = PhysicalConstants{}.hbar);

/// Initial width that minimizes packet_width at time t: sqrt(2 hbar t / m).
double optimal_packet_delta(double t, double mass, double hbar = PhysicalConstants{}.hbar);

/// Upper bound on tau from combining the dispersion and coupling conditions:
/// (m (g1 g2)^(2/3) mu^(2/3) / (hbar^(5/3) N))^3.
double tau_upper_bound(const PhysicalScenario& s);

/// Impact parameter window implied by tau: d must exceed sqrt(hbar N tau / m)
/// and stay below (mu g1 g2 tau / hbar)^(1/3).
struct ImpactWindow {
  double d_min = 0.0;
  double d_max = 0.0;
  bool nonempty() const { return d_min < d_max; }
};

ImpactWindow impact_window(const PhysicalScenario& s);

struct MassMoment {
  double lhs = 0.0;  // m (g1 g2)^(2/3)
  double rhs = 0.0;  // t_planck^(1/3) hbar^(5/3) N^(5/4) / mu^(2/3) at a = 1/3
  Check check;       // lhs >> rhs
};

/// Threshold on m (g1 g2)^(2/3) for a collapse to remain distinguishable.
/// For a general clock exponent the N power is (7 - 6a) / (6 - 6a).
double mass_moment_rhs(double n, const realclock::ClockChannel& ch,
                       const PhysicalConstants& c = {});

MassMoment mass_moment_threshold(const PhysicalScenario& s, double n,
                                 const realclock::ClockChannel& ch);

/// Needle/environment moment (J/T) that a particle of mass m needs, taking
/// g1 = g2 = gamma, so that m gamma^(4/3) equals the threshold at N.
double required_moment(double mass, double n, const realclock::ClockChannel& ch,
                       const PhysicalConstants& c = {});

/// 0.1 mu g1 g2 m / hbar^2
double packet_chain_d_max(const PhysicalScenario& s);

/// Non-minimal packet chain with delta = d/10 over T = N tau.
FeasibilityReport packet_chain_analysis(const PhysicalScenario& s);

/// Every condition of the collapse-test experiment with N = n.
FeasibilityReport full_report(const PhysicalScenario& s, std::size_t n);

}  // namespace decolab::feasibility

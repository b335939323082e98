#include "decolab/app/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "decolab/bath.hpp"
#include "decolab/cavity.hpp"
#include "decolab/despagnat.hpp"
#include "decolab/feasibility.hpp"
#include "decolab/oracle.hpp"
#include "decolab/realclock.hpp"
#include "decolab/undecidability.hpp"
#include "decolab/zurek.hpp"

namespace decolab::app {

namespace {

constexpr double kLn10 = 2.302585092994045684;

double log10_of(const LogComplex& z) { return z.log10_abs(); }

// ---------------------------------------------------------------------------
// Shared scenario sections

std::uint64_t seed_of(const Node& root, const Overrides& ov) {
  if (ov.seed) return *ov.seed;
  if (auto s = root.get("seed")) return s->u64();
  return 0;
}

std::size_t n_of(const Node& root, const Overrides& ov) {
  if (ov.n) {
    if (!(*ov.n >= 1.0) || *ov.n != std::floor(*ov.n) || *ov.n > 1e15) {
      throw SchemaError("--n", 0, "must be an integer >= 1");
    }
    return static_cast<std::size_t>(*ov.n);
  }
  return root.at("n").count(1);
}

void check_model(const Node& root, const char* expected) {
  if (auto m = root.get("model")) {
    const std::string got = m->str();
    if (got != "zurek" && got != "cavity") m->fail("model must be \"zurek\" or \"cavity\"");
    if (got != expected) m->fail(std::string("this command needs model \"") + expected + "\"");
  }
}

QubitAmplitudes system_of(const Node& root) {
  const auto node = root.get("system");
  if (!node) return QubitAmplitudes(std::sqrt(0.5), std::sqrt(0.5));
  node->only({"a", "b"});
  const cplx a = node->at("a").complex();
  const cplx b = node->at("b").complex();
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) node->fail("|a|^2 + |b|^2 must be 1");
  return QubitAmplitudes(a, b);
}

Bath bath_of(const Node& root, std::size_t n, std::uint64_t seed) {
  const CouplingLaw law = parse_coupling(root.at("coupling"));
  SpinLaw spins = SpinLaw::haar;
  if (auto s = root.get("bath_state")) {
    try {
      spins = parse_spin_law(s->str());
    } catch (const ParameterError&) {
      s->fail("bath_state must be haar, balanced, symmetric or polarized");
    }
  }
  return sample_bath(n, law, seed, spins);
}

std::vector<double> grid_of(const Node& node) {
  if (node.is_array()) {
    auto t = node.numbers();
    if (t.empty()) node.fail("time grid must not be empty");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0.0) node.element(i).fail("times must be >= 0");
      if (i && t[i] < t[i - 1]) node.element(i).fail("times must be sorted");
    }
    return t;
  }
  node.only({"start", "stop", "count"});
  const double start = node.at("start").nonnegative();
  const double stop = node.at("stop").nonnegative();
  const std::size_t count = node.at("count").count(1);
  if (stop < start) node.at("stop").fail("must be >= start");
  if (count > 10000000) node.at("count").fail("at most 1e7 points");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return t;
}

PhysicalConstants constants_of(const Node& root) {
  PhysicalConstants c;
  if (auto node = root.get("constants")) {
    node->only({"hbar", "mu0"});
    if (auto x = node->get("hbar")) c.hbar = x->positive();
    if (auto x = node->get("mu0")) c.mu0 = x->positive();
  }
  if (auto node = root.get("clock")) {
    node->only({"t_planck", "clock_exponent"});
    if (auto x = node->get("t_planck")) c.t_planck = x->positive();
    if (auto x = node->get("clock_exponent")) {
      c.clock_exponent = x->number();
      if (!(c.clock_exponent > 0.0 && c.clock_exponent < 1.0)) x->fail("must lie in (0, 1)");
    }
  }
  return c;
}

realclock::ClockChannel clock_of(const Node& root) { return realclock::ClockChannel::from(constants_of(root)); }

cavity::PassParams pass_of(const Node& root) {
  const Node node = root.at("pass");
  node.only({"B", "gamma1", "gamma2", "tau", "hbar"});
  const double hbar = node.has("hbar") ? node.at("hbar").positive() : 1.0;
  return {0.0, node.at("B").nonnegative(), node.at("gamma1").nonnegative(), node.at("gamma2").nonnegative(),
          node.at("tau").nonnegative(), hbar};
}

PhysicalScenario physical_of(const std::optional<Node>& node, const Overrides& ov, std::size_t n,
                             const PhysicalConstants& constants, const feasibility::PresetCatalog& presets) {
  std::optional<std::string> preset = ov.preset;
  if (!preset && node && node->has("preset")) preset = node->at("preset").str();
  PhysicalScenario s;
  s.N = n;
  if (preset) {
    const auto found = feasibility::find_scenario(*preset, presets);
    if (!found) {
      if (node && node->has("preset") && !ov.preset) node->at("preset").fail("unknown preset \"" + *preset + "\"");
      throw SchemaError("--preset", 0, "unknown preset \"" + *preset + "\"");
    }
    s = feasibility::make_scenario(*found, n, presets);
  } else if (!node) {
    throw SchemaError("scenario", 0, "a \"physical\" section or --preset is required");
  }
  s.constants = constants;
  if (node) {
    node->only({"preset", "mass_kg", "gamma1_J_per_T", "gamma2_J_per_T", "B_T", "d_m", "L_m", "v_m_per_s", "tau_s"});
    auto field = [&](const char* key, double& slot) {
      if (auto x = node->get(key)) slot = x->positive();
      else if (!preset) node->at(key);  // reports the missing key
    };
    field("mass_kg", s.mass);
    field("gamma1_J_per_T", s.gamma1);
    field("gamma2_J_per_T", s.gamma2);
    field("B_T", s.B);
    field("d_m", s.d);
    field("L_m", s.L);
    field("v_m_per_s", s.v);
    if (auto x = node->get("tau_s")) s.tau = x->positive();
    else if (!preset || node->has("L_m") || node->has("v_m_per_s")) s.tau = 2.0 * s.L / s.v;
  }
  s.validate();
  return s;
}

Table key_value(const std::string& name) { return Table{name, {"quantity", "value"}, {}}; }

std::int64_t as_i64(std::size_t x) { return static_cast<std::int64_t>(x); }

// ---------------------------------------------------------------------------
// zurek-run / revival-scan

CommandOutput zurek_run(const Node& root, const Overrides& ov) {
  root.only({"command", "description", "model", "n", "seed", "coupling", "bath_state", "system", "times", "clock",
             "threads"});
  check_model(root, "zurek");
  const std::size_t n = n_of(root, ov);
  const std::uint64_t seed = seed_of(root, ov);
  const Bath bath = bath_of(root, n, seed);
  const QubitAmplitudes sys = system_of(root);
  const auto grid = grid_of(root.at("times"));
  const auto ch = clock_of(root);
  const std::size_t threads = root.has("threads") ? root.at("threads").count(1) : 1;

  CommandOutput out;
  Table curve{"zurek_curve", {"t_s", "log10_abs_z", "phase_rad", "log10_abs_z_damped"}, {}};
  for (double t : grid) {
    const LogComplex z = zurek::z_factor(bath, t);
    const LogComplex zd = realclock::damped_z(bath, t, ch);
    curve.add({t, log10_of(z), z.phase(), log10_of(zd)});
  }
  const auto report = zurek::revival_scan(bath, grid, threads);
  Table peaks{"zurek_revivals", {"t_s", "abs_z", "log10_abs_z"}, {}};
  for (const auto& p : report.peaks) peaks.add({p.t, p.abs_z, std::log10(p.abs_z)});

  double mean_g = 0.0;
  for (const auto& s : bath) mean_g += s.coupling();
  mean_g /= static_cast<double>(n);
  Table summary = key_value("zurek_summary");
  summary.add({std::string("n"), static_cast<double>(n)});
  summary.add({std::string("seed"), static_cast<double>(seed)});
  summary.add({std::string("abs_a_squared"), std::norm(sys.a())});
  summary.add({std::string("mean_coupling_rad_s"), mean_g});
  summary.add({std::string("log10_interference_floor"), zurek::interference_floor(n) / kLn10});
  if (mean_g > 0.0) summary.add({std::string("log10_revival_time_s"), zurek::revival_time_log(n, mean_g) / kLn10});
  summary.add({std::string("log10_mean_z2"), report.log_mean_z2 / kLn10});
  summary.add({std::string("revival_peaks"), static_cast<double>(report.peaks.size())});
  out.tables = {std::move(curve), std::move(peaks), std::move(summary)};
  out.messages.push_back("revival peaks above floor: " + std::to_string(report.peaks.size()));
  return out;
}

CommandOutput revival_scan_cmd(const Node& root, const Overrides& ov) {
  root.only({"command", "description", "model", "n", "seed", "coupling", "bath_state", "times", "clock", "threads",
             "killed_scan"});
  check_model(root, "zurek");
  const std::size_t n = n_of(root, ov);
  const std::uint64_t seed = seed_of(root, ov);
  const Bath bath = bath_of(root, n, seed);
  const auto grid = grid_of(root.at("times"));
  const std::size_t threads = root.has("threads") ? root.at("threads").count(1) : 1;
  const auto report = zurek::revival_scan(bath, grid, threads);

  CommandOutput out;
  Table peaks{"revival_peaks", {"t_s", "abs_z", "log10_abs_z"}, {}};
  for (const auto& p : report.peaks) peaks.add({p.t, p.abs_z, std::log10(p.abs_z)});
  Table summary = key_value("revival_summary");
  summary.add({std::string("n"), static_cast<double>(n)});
  summary.add({std::string("grid_points"), static_cast<double>(grid.size())});
  summary.add({std::string("log10_floor"), report.log_floor / kLn10});
  summary.add({std::string("log10_mean_z2"), report.log_mean_z2 / kLn10});
  summary.add({std::string("peaks"), static_cast<double>(report.peaks.size())});
  out.messages.push_back("peaks: " + std::to_string(report.peaks.size()));

  if (auto ks = root.get("killed_scan")) {
    ks->only({"g", "n_max"});
    const double g = ks->at("g").positive();
    const std::size_t n_max = ks->at("n_max").count(1);
    if (n_max > 100000) ks->at("n_max").fail("at most 100000");
    const auto ch = clock_of(root);
    Table killed{"revival_killed", {"n", "ln_damping", "ln_floor", "margin", "killed"}, {}};
    std::optional<std::size_t> critical;
    for (std::size_t k = 1; k <= n_max; ++k) {
      const auto v = realclock::revival_killed(k, g, ch);
      killed.add({as_i64(k), v.log_damping, v.log_floor, v.margin, v.killed});
      if (v.killed && !critical) critical = k;
    }
    summary.add({std::string("critical_n"), critical ? static_cast<double>(*critical) : -1.0});
    out.messages.push_back(critical ? "revivals killed from N = " + std::to_string(*critical)
                                    : "revivals survive up to N = " + std::to_string(n_max));
    out.tables = {std::move(peaks), std::move(summary), std::move(killed)};
    return out;
  }
  out.tables = {std::move(peaks), std::move(summary)};
  return out;
}

// ---------------------------------------------------------------------------
// cavity-run

CommandOutput cavity_run(const Node& root, const Overrides& ov) {
  root.only({"command", "description", "model", "n_values", "seeds", "seed", "coupling", "bath_state", "system",
             "pass", "weak_ratio", "approx"});
  check_model(root, "cavity");
  const QubitAmplitudes sys = system_of(root);
  const auto pass = pass_of(root);
  const std::uint64_t seed = seed_of(root, ov);
  const std::size_t seeds = root.has("seeds") ? root.at("seeds").count(1) : 1;
  const double ratio = root.has("weak_ratio") ? root.at("weak_ratio").positive() : cavity::kWeakCouplingRatio;
  const bool approx = root.has("approx") ? root.at("approx").boolean() : true;
  std::vector<std::size_t> ns;
  if (ov.n) {
    ns.push_back(n_of(root, ov));
  } else {
    const Node list = root.at("n_values");
    if (list.size() == 0) list.fail("must not be empty");
    for (std::size_t i = 0; i < list.size(); ++i) ns.push_back(list.element(i).count(1));
  }

  CommandOutput out;
  Table needle{"cavity_needle",
               {"n", "seed", "rho_pp", "rho_mm", "log10_abs_rho_pm", "phase_rho_pm_rad", "ln_inner_aa",
                "ln_inner_bb", "log10_abs_inner_ab", "log10_abs_inner_ab_approx"},
               {}};
  Table trend{"cavity_trend", {"n", "median_log10_abs_rho_pm"}, {}};
  for (std::size_t n : ns) {
    std::vector<double> logs;
    for (std::size_t r = 0; r < seeds; ++r) {
      const std::uint64_t sd = seed + r;
      const Bath bath = bath_of(root, n, sd);
      const auto bv = cavity::branch_vectors(sys, bath, pass);
      const auto rho = cavity::reduced_density_needle(sys, bv);
      const LogComplex ab = cavity::inner_ab(bv);
      double approx_log = std::nan("");
      if (approx) approx_log = log10_of(cavity::inner_ab_approx(bath, pass, ratio));
      needle.add({as_i64(n), static_cast<double>(sd), rho.rho_pp, rho.rho_mm, log10_of(rho.rho_pm), rho.rho_pm.phase(),
                  cavity::inner_aa(bv), cavity::inner_bb(bv), log10_of(ab), approx_log});
      logs.push_back(log10_of(rho.rho_pm));
    }
    std::sort(logs.begin(), logs.end());
    const std::size_t m = logs.size();
    const double median = m % 2 ? logs[m / 2] : 0.5 * (logs[m / 2 - 1] + logs[m / 2]);
    trend.add({as_i64(n), median});
  }
  if (!approx) {
    for (auto& row : needle.rows) row.back() = std::string("");
  }
  out.tables = {std::move(needle), std::move(trend)};
  return out;
}

// ---------------------------------------------------------------------------
// despagnat

CommandOutput despagnat_cmd(const Node& root, const Overrides& ov, const feasibility::PresetCatalog& presets) {
  root.only({"command", "description", "model", "n", "seed", "coupling", "bath_state", "system", "pass", "clock",
             "constants", "theta_values", "weak_ratio", "physical", "k_n_values"});
  check_model(root, "cavity");
  CommandOutput out;
  const auto constants = constants_of(root);
  const auto ch = realclock::ClockChannel::from(constants);

  if (root.has("pass")) {
    const std::size_t n = n_of(root, ov);
    const std::uint64_t seed = seed_of(root, ov);
    const Bath bath = bath_of(root, n, seed);
    const QubitAmplitudes sys = system_of(root);
    const auto pass = pass_of(root);
    const double ratio = root.has("weak_ratio") ? root.at("weak_ratio").positive() : cavity::kWeakCouplingRatio;

    Table m{"despagnat_m", {"regime", "value", "log10_abs_term"}, {}};
    const auto mu = despagnat::m_expect_unitary(sys, bath, pass, ratio);
    const auto mc = despagnat::m_expect_collapsed();
    const auto md = despagnat::m_expect_damped(sys, bath, pass, ch, ratio);
    for (const auto* e : {&mu, &mc, &md}) {
      m.add({std::string(despagnat::to_string(e->regime)), e->value, log10_of(e->term)});
    }
    out.messages.push_back("<M> unitary = " + format_number(mu.value) + ", collapsed = 0");
    out.tables.push_back(std::move(m));

    if (auto thetas = root.get("theta_values")) {
      Table th{"despagnat_theta", {"theta_s2", "value", "log10_abs_term"}, {}};
      for (std::size_t i = 0; i < thetas->size(); ++i) {
        const double theta = thetas->element(i).nonnegative();
        const auto e = despagnat::m_expect_damped(sys, bath, pass, theta, ratio);
        th.add({theta, e.value, log10_of(e.term)});
      }
      out.tables.push_back(std::move(th));
    }
  }

  if (root.has("physical") || ov.preset) {
    std::vector<double> ns;
    if (ov.n) {
      ns.push_back(*ov.n);
    } else {
      const Node list = root.at("k_n_values");
      for (std::size_t i = 0; i < list.size(); ++i) ns.push_back(static_cast<double>(list.element(i).count(1)));
    }
    const auto s = physical_of(root.get("physical"), ov, 1, constants, presets);
    Table k{"despagnat_k", {"n", "k", "lower_bound", "alternate_6k", "mass_moment_margin_log10", "verdict"}, {}};
    for (double n : ns) {
      const auto kk = despagnat::k_exponent(static_cast<std::size_t>(n), s.B, s.gamma1, s.gamma2, s.tau, ch,
                                            s.constants.hbar);
      const auto mm = feasibility::mass_moment_threshold(s, n, ch);
      // The K exponent alone cannot see the dispersion constraint; the mass-moment form folds it in.
      const bool distinguishable =
          despagnat::collapse_distinguishable(kk.k) == despagnat::Verdict::distinguishable && mm.check.pass;
      const char* verdict = distinguishable ? "distinguishable" : "undecidable";
      k.add({n, kk.k, kk.lower_bound, kk.alternate, mm.check.margin, std::string(verdict)});
      out.messages.push_back("N = " + format_number(n) + ": " + verdict);
    }
    out.tables.push_back(std::move(k));
  }
  if (out.tables.empty()) root.fail("needs a \"pass\" section, a \"physical\" section, or --preset");
  return out;
}

// ---------------------------------------------------------------------------
// feasibility

void add_checks(Table& t, const feasibility::FeasibilityReport& r) {
  for (const auto& c : r.checks) {
    t.add({c.name, c.lhs, std::string(feasibility::to_string(c.relation)), c.rhs, c.pass, c.margin});
  }
  t.add({std::string("overall"), std::nan(""), std::string(""), std::nan(""), r.overall, std::nan("")});
}

CommandOutput feasibility_cmd(const ScenarioDoc* doc, const Overrides& ov, const feasibility::PresetCatalog& presets) {
  std::optional<Node> root;
  if (doc) {
    root = doc->root();
    root->only({"command", "description", "model", "n", "physical", "constants", "clock"});
  }
  double n_real = 1.0;
  if (ov.n) n_real = *ov.n;
  else if (root) n_real = static_cast<double>(root->at("n").count(1));
  else throw SchemaError("--n", 0, "required without a scenario file");
  if (!(n_real >= 1.0) || n_real > 1e15) throw SchemaError("--n", 0, "must lie in [1, 1e15]");
  const auto n = static_cast<std::size_t>(n_real);

  const auto constants = root ? constants_of(*root) : PhysicalConstants{};
  const auto s = physical_of(root ? root->get("physical") : std::nullopt, ov, n, constants, presets);
  const auto ch = realclock::ClockChannel::from(constants);
  const auto report = feasibility::full_report(s, n);
  const auto chain = feasibility::packet_chain_analysis(s);

  CommandOutput out;
  const std::vector<std::string> cols{"check", "lhs", "relation", "rhs", "pass", "margin_log10"};
  Table main{"feasibility_report", cols, {}};
  add_checks(main, report);
  Table app1{"feasibility_packets", cols, {}};
  add_checks(app1, chain);

  Table numbers = key_value("feasibility_numbers");
  numbers.add({std::string("n"), n_real});
  numbers.add({std::string("transverse_velocity_m_s"), feasibility::transverse_velocity(s)});
  numbers.add({std::string("min_dispersion_total_time_m"), feasibility::min_dispersion(s.total_time(), s.mass,
                                                                                       s.constants.hbar)});
  numbers.add({std::string("integrated_coupling_rad"), cavity::integrated_coupling(s)});
  numbers.add({std::string("tau_upper_bound_s"), feasibility::tau_upper_bound(s)});
  const auto mm = feasibility::mass_moment_threshold(s, n_real, ch);
  numbers.add({std::string("mass_moment_lhs"), mm.lhs});
  numbers.add({std::string("mass_moment_rhs"), mm.rhs});
  numbers.add({std::string("packet_chain_d_max_m"), feasibility::packet_chain_d_max(s)});
  numbers.add({std::string("k_exponent"),
               despagnat::k_exponent(n, s.B, s.gamma1, s.gamma2, s.tau, ch, s.constants.hbar).k});

  out.messages.push_back(std::string("overall: ") + (report.overall ? "PASS" : "FAIL"));
  for (const auto& c : report.checks) {
    if (!c.pass) out.messages.push_back("  failed: " + c.name);
  }
  out.tables = {std::move(main), std::move(app1), std::move(numbers)};
  return out;
}

// ---------------------------------------------------------------------------
// undecide

CommandOutput undecide_cmd(const Node& root) {
  root.only({"command", "description", "c1", "c2", "omega", "theta_values", "epsilon"});
  const cplx c1 = root.at("c1").complex();
  const cplx c2 = root.at("c2").complex();
  if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > 1e-12) root.at("c2").fail("|c1|^2 + |c2|^2 must be 1");
  const double omega = root.has("omega") ? root.at("omega").positive() : 1.0;
  const double eps = root.has("epsilon") ? root.at("epsilon").positive() : undecidability::kDefaultEpsilon;
  const Node thetas = root.at("theta_values");
  if (thetas.size() == 0) thetas.fail("must not be empty");

  namespace ud = undecidability;
  const Vector psi = ud::three_spin_event_state(c1, c2);
  const auto pointers = ud::pointer_projectors(3);
  const auto energies = ud::pointer_energies(3, omega);

  CommandOutput out;
  Table margin{"undecide_margin", {"theta", "margin", "event"}, {}};
  bool any_event = false;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const Node tn = thetas.element(i);
    double theta = 0.0;
    if (tn.is_string()) {
      if (tn.str() != "inf") tn.fail("must be a number or \"inf\"");
      theta = std::numeric_limits<double>::infinity();
    } else {
      theta = tn.nonnegative();
    }
    const auto r = ud::undecidability_margin(psi, pointers, {energies, theta}, eps);
    any_event = any_event || r.event;
    margin.add({theta, r.margin, r.event});
  }

  const DensityMatrix pure = DensityMatrix::pure(psi);
  const std::array<std::size_t, 1> keep{0};
  const std::array<std::size_t, 3> dims{2, 2, 2};
  const DensityMatrix reduced = partial_trace(pure, keep, dims);
  const auto essential = ud::three_spin_essential();
  Table summary = key_value("undecide_summary");
  summary.add({std::string("reduced_pp"), reduced(0, 0).real()});
  summary.add({std::string("reduced_mm"), reduced(1, 1).real()});
  summary.add({std::string("abs_reduced_pm"), std::abs(reduced(0, 1))});
  summary.add({std::string("pure_vs_mixture"), trace_distance(pure, ud::projection_mixture(psi, pointers))});
  summary.add({std::string("p1_compatible"), ud::is_compatible(pointers[0], essential) ? 1.0 : 0.0});
  summary.add({std::string("p23_compatible"), ud::is_compatible(ud::opposite_pair_projector(), essential) ? 1.0 : 0.0});
  summary.add({std::string("p_minus_compatible"), ud::is_compatible(pointers[1], essential) ? 1.0 : 0.0});
  out.messages.push_back(any_event ? "undecidability reached on the theta grid" : "no event on the theta grid");
  out.tables = {std::move(margin), std::move(summary)};
  return out;
}

// ---------------------------------------------------------------------------
// oracle-check

CommandOutput oracle_check_cmd(const ScenarioDoc* doc, const Overrides& ov) {
  std::uint64_t seed = 2024;
  std::size_t sets = 20;
  if (doc) {
    const Node root = doc->root();
    root.only({"command", "description", "seed", "sets"});
    if (auto s = root.get("seed")) seed = s->u64();
    if (auto s = root.get("sets")) sets = s->count(1);
  }
  if (ov.seed) seed = *ov.seed;
  CommandOutput out;
  Table t{"oracle_check", {"check", "max_deviation", "tolerance", "pass"}, {}};
  bool all = true;
  for (const auto& c : run_oracle_suite(seed, sets)) {
    t.add({c.name, c.max_deviation, c.tolerance, c.pass()});
    all = all && c.pass();
    out.messages.push_back((c.pass() ? "ok    " : "FAIL  ") + c.name + "  max deviation " +
                           format_number(c.max_deviation) + " (tolerance " + format_number(c.tolerance) + ")");
  }
  out.tables = {std::move(t)};
  out.exit_code = all ? 0 : 1;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<OracleCheck> run_oracle_suite(std::uint64_t seed, std::size_t sets) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto random_system = [&] {
    auto [a, b] = haar_qubit(rng);
    return QubitAmplitudes(a, b);
  };

  OracleCheck zurek_rho{"zurek_reduced_density", 0.0, 1e-10};
  OracleCheck zurek_m{"zurek_m_conservation", 0.0, 1e-10};
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t r = 0; r < sets; ++r) {
      const auto sys = random_system();
      const Bath bath = sample_bath(n, UniformCoupling{0.1, 3.0}, rng());
      const double t = uniform(0.0, 10.0);
      const auto analytic = zurek::reduced_density(sys, bath, t);
      const auto st0 = oracle::dense_from_product(sys, bath);
      const auto st = oracle::dense_evolve_zurek(st0, bath, t);
      const Eigen::Matrix2cd dense = oracle::needle_reduced(st);
      zurek_rho.max_deviation = std::max(zurek_rho.max_deviation, (analytic.entries() - dense).cwiseAbs().maxCoeff());
      zurek_m.max_deviation =
          std::max(zurek_m.max_deviation, std::abs(oracle::dense_m_expect(st) - oracle::dense_m_expect(st0)));
    }
  }

  OracleCheck closed{"cavity_closed_vs_rk4", 0.0, 1e-8};
  OracleCheck unit_norm{"cavity_pass_unitarity", 0.0, 1e-10};
  for (std::size_t r = 0; r < 5 * sets; ++r) {
    const auto sys = random_system();
    auto [al, be] = haar_qubit(rng);
    const cavity::PassParams p(uniform(0.0, 3.0), uniform(0.0, 2.0), uniform(0.0, 2.0), uniform(0.0, 2.0),
                               uniform(0.0, 2.0), 1.0);
    const BathSpin spin(al, be, p.f());
    const auto c = cavity::single_pass_closed(sys, spin, p);
    const auto nu = cavity::single_pass_numeric(sys, spin, p, 2000);
    closed.max_deviation = std::max(closed.max_deviation, (c.as_vector() - nu.as_vector()).cwiseAbs().maxCoeff());
    unit_norm.max_deviation = std::max(unit_norm.max_deviation, std::abs(c.norm2() - 1.0));
  }

  OracleCheck needle{"cavity_reduced_density_needle", 0.0, 1e-9};
  OracleCheck m_unitary{"despagnat_m_expect_unitary", 0.0, 1e-9};
  OracleCheck cavity_m{"cavity_m_conservation_B0", 0.0, 1e-10};
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t r = 0; r < sets; ++r) {
      const auto sys = random_system();
      const double g1 = uniform(10.0, 20.0), g2 = uniform(1.0, 5.0);
      const cavity::PassParams p(0.0, 1.0, g1, g2, uniform(0.5, 2.0), 1.0);
      const double zm = p.zeeman_minus();
      std::vector<double> f(n);
      for (auto& x : f) x = zm * std::exp(uniform(std::log(1e-3), std::log(5e-2)));
      const Bath bath = sample_bath(n, FixedCoupling{1.0}, rng()).with_couplings(f);
      const auto st0 = oracle::dense_from_product(sys, bath);
      const auto st = oracle::dense_evolve_cavity(st0, bath, p);
      const auto rho = cavity::reduced_density_needle(sys, cavity::branch_vectors(sys, bath, p));
      needle.max_deviation =
          std::max(needle.max_deviation, (rho.matrix() - oracle::needle_reduced(st)).cwiseAbs().maxCoeff());
      m_unitary.max_deviation = std::max(
          m_unitary.max_deviation, std::abs(despagnat::m_expect_unitary(sys, bath, p).value - oracle::dense_m_expect(st)));

      const cavity::PassParams p0(0.0, 0.0, g1, g2, p.tau(), 1.0);
      auto cur = st0;
      const double m0 = oracle::dense_m_expect(cur);
      for (std::size_t k = 0; k < n; ++k) {
        cur = oracle::apply_pair(cur, k, oracle::pass_propagator(p0.with_coupling(f[k])));
        cavity_m.max_deviation = std::max(cavity_m.max_deviation, std::abs(oracle::dense_m_expect(cur) - m0));
      }
    }
  }
  return {zurek_rho, zurek_m, closed, unit_norm, needle, m_unitary, cavity_m};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"zurek-run", "cavity-run", "despagnat", "feasibility",
                                              "undecide", "oracle-check", "revival-scan"};
  return names;
}

bool scenario_optional(const std::string& command) { return command == "feasibility" || command == "oracle-check"; }

CommandOutput run_command(const std::string& command, const ScenarioDoc* doc, const Overrides& overrides,
                          const feasibility::PresetCatalog& presets) {
  if (std::find(command_names().begin(), command_names().end(), command) == command_names().end()) {
    throw std::invalid_argument("unknown command: " + command);
  }
  if (!doc && !scenario_optional(command)) throw SchemaError(command, 0, "--scenario is required");
  if (doc) {
    if (auto c = doc->root().get("command")) {
      if (c->str() != command) c->fail("scenario is for \"" + c->str() + "\", not \"" + command + "\"");
    }
  }
  if (command == "feasibility") return feasibility_cmd(doc, overrides, presets);
  if (command == "oracle-check") return oracle_check_cmd(doc, overrides);
  const Node root = doc->root();
  if (command == "zurek-run") return zurek_run(root, overrides);
  if (command == "revival-scan") return revival_scan_cmd(root, overrides);
  if (command == "cavity-run") return cavity_run(root, overrides);
  if (command == "despagnat") return despagnat_cmd(root, overrides, presets);
  return undecide_cmd(root);
}

}  // namespace decolab::app

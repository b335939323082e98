#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decolab/bath.hpp"
#include "decolab/cavity.hpp"
#include "decolab/density.hpp"
#include "decolab/despagnat.hpp"
#include "decolab/feasibility.hpp"
#include "decolab/log_complex.hpp"
#include "decolab/oracle.hpp"
#include "decolab/realclock.hpp"
#include "decolab/undecidability.hpp"
#include "decolab/zurek.hpp"

namespace py = pybind11;
using namespace decolab;

namespace {

std::vector<double> to_vec(const py::iterable& it) {
  std::vector<double> out;
  for (auto x : it) out.push_back(x.cast<double>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_decolab, m) {
  m.doc() = "Spin-bath decoherence models, real-clock damping and dense cross-checks";

  auto base = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<DegenerateBranchError>(m, "DegenerateBranchError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_OverflowError);
  (void)base;

  // -- core ------------------------------------------------------------------
  py::class_<QubitAmplitudes>(m, "QubitAmplitudes")
      .def(py::init<cplx, cplx>(), py::arg("a"), py::arg("b"))
      .def_static("normalized", &QubitAmplitudes::normalized, py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &QubitAmplitudes::a)
      .def_property_readonly("b", &QubitAmplitudes::b);

  py::class_<BathSpin>(m, "BathSpin")
      .def(py::init<cplx, cplx, double>(), py::arg("alpha"), py::arg("beta"), py::arg("coupling"))
      .def_property_readonly("alpha", &BathSpin::alpha)
      .def_property_readonly("beta", &BathSpin::beta)
      .def_property_readonly("coupling", &BathSpin::coupling)
      .def_property_readonly("polarization", &BathSpin::polarization);

  py::class_<Bath>(m, "Bath")
      .def(py::init<std::vector<BathSpin>>(), py::arg("spins"))
      .def("__len__", &Bath::size)
      .def("__getitem__", [](const Bath& b, std::size_t k) {
        if (k >= b.size()) throw py::index_error();
        return b[k];
      })
      .def_property_readonly("spins", &Bath::spins)
      .def("with_couplings", &Bath::with_couplings, py::arg("couplings"));

  py::class_<LogComplex>(m, "LogComplex")
      .def(py::init<double, double>(), py::arg("log_mag"), py::arg("phase"))
      .def_static("from_complex", &LogComplex::from_complex)
      .def_property_readonly("log_mag", &LogComplex::log_mag)
      .def_property_readonly("phase", &LogComplex::phase)
      .def_property_readonly("is_zero", &LogComplex::is_zero)
      .def("log10_abs", &LogComplex::log10_abs)
      .def("__abs__", &LogComplex::abs)
      .def("__complex__", &LogComplex::to_complex)
      .def("to_complex", &LogComplex::to_complex)
      .def("__repr__", [](const LogComplex& z) {
        return "LogComplex(log_mag=" + std::to_string(z.log_mag()) + ", phase=" + std::to_string(z.phase()) + ")";
      });

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("hbar", &PhysicalConstants::hbar)
      .def_readwrite("mu0", &PhysicalConstants::mu0)
      .def_readwrite("t_planck", &PhysicalConstants::t_planck)
      .def_readwrite("clock_exponent", &PhysicalConstants::clock_exponent);

  py::class_<PhysicalScenario>(m, "PhysicalScenario")
      .def(py::init<>())
      .def_readwrite("mass", &PhysicalScenario::mass)
      .def_readwrite("gamma1", &PhysicalScenario::gamma1)
      .def_readwrite("gamma2", &PhysicalScenario::gamma2)
      .def_readwrite("B", &PhysicalScenario::B)
      .def_readwrite("d", &PhysicalScenario::d)
      .def_readwrite("L", &PhysicalScenario::L)
      .def_readwrite("v", &PhysicalScenario::v)
      .def_readwrite("tau", &PhysicalScenario::tau)
      .def_readwrite("N", &PhysicalScenario::N)
      .def_readwrite("constants", &PhysicalScenario::constants)
      .def("validate", &PhysicalScenario::validate);

  m.def(
      "sample_bath",
      [](std::size_t n, const std::string& law, double lo, double hi, std::uint64_t seed, const std::string& spins) {
        CouplingLaw cl;
        if (law == "fixed") cl = FixedCoupling{lo};
        else if (law == "uniform") cl = UniformCoupling{lo, hi};
        else if (law == "log-uniform") cl = LogUniformCoupling{lo, hi};
        else throw ParameterError("unknown coupling law: " + law);
        return sample_bath(n, cl, seed, parse_spin_law(spins));
      },
      py::arg("n"), py::arg("law") = "fixed", py::arg("low") = 1.0, py::arg("high") = 1.0, py::arg("seed") = 0,
      py::arg("spins") = "haar",
      "Random bath. law is fixed (coupling = low), uniform or log-uniform on [low, high].");

  m.def("log_product", [](const std::vector<cplx>& f) { return log_product(f); }, py::arg("factors"));
  m.def("partial_trace",
        [](const Matrix& rho, const std::vector<std::size_t>& keep, const std::vector<std::size_t>& dims) {
          return partial_trace(DensityMatrix(rho), keep, dims).entries();
        },
        py::arg("rho"), py::arg("keep"), py::arg("dims"));
  m.def("trace_distance", [](const Matrix& a, const Matrix& b) {
    return trace_distance(DensityMatrix(a), DensityMatrix(b));
  });

  // -- zurek -----------------------------------------------------------------
  auto zm = m.def_submodule("zurek");
  zm.def("z_factor", &zurek::z_factor, py::arg("bath"), py::arg("t"));
  zm.def("reduced_density",
         [](const QubitAmplitudes& s, const Bath& b, double t) { return zurek::reduced_density(s, b, t).entries(); },
         py::arg("system"), py::arg("bath"), py::arg("t"));
  zm.def(
      "revival_scan",
      [](const Bath& bath, const py::iterable& grid, std::size_t threads) {
        const auto r = zurek::revival_scan(bath, to_vec(grid), threads);
        py::list peaks;
        for (const auto& p : r.peaks) peaks.append(py::make_tuple(p.t, p.abs_z));
        py::dict d;
        d["scan_times"] = r.scan_times;
        d["z_magnitudes"] = r.z_magnitudes;
        d["log_z_magnitudes"] = r.log_z_magnitudes;
        d["peaks"] = peaks;
        d["floor"] = r.floor;
        d["log_floor"] = r.log_floor;
        d["log_mean_z2"] = r.log_mean_z2;
        return d;
      },
      py::arg("bath"), py::arg("t_grid"), py::arg("threads") = 1);
  zm.def("revival_time_log", &zurek::revival_time_log, py::arg("n"), py::arg("mean_freq"));
  zm.def("interference_floor", &zurek::interference_floor, py::arg("n"));
  zm.def("suppression_particle_count", &zurek::suppression_particle_count, py::arg("epsilon"), py::arg("n0"));

  // -- cavity ----------------------------------------------------------------
  auto cm = m.def_submodule("cavity");
  py::class_<cavity::PassParams>(cm, "PassParams")
      .def(py::init<double, double, double, double, double, double>(), py::arg("f"), py::arg("B"),
           py::arg("gamma1"), py::arg("gamma2"), py::arg("tau"), py::arg("hbar") = 1.0)
      .def_property_readonly("f", &cavity::PassParams::f)
      .def_property_readonly("tau", &cavity::PassParams::tau)
      .def_property_readonly("omega", &cavity::PassParams::omega)
      .def_property_readonly("zeeman_plus", &cavity::PassParams::zeeman_plus)
      .def_property_readonly("zeeman_minus", &cavity::PassParams::zeeman_minus)
      .def("with_coupling", &cavity::PassParams::with_coupling);
  py::class_<cavity::PassCoefficients>(cm, "PassCoefficients")
      .def_readonly("R", &cavity::PassCoefficients::R)
      .def_readonly("T", &cavity::PassCoefficients::T)
      .def_readonly("U", &cavity::PassCoefficients::U)
      .def_readonly("V", &cavity::PassCoefficients::V)
      .def("norm2", &cavity::PassCoefficients::norm2);
  py::class_<cavity::BranchVectors>(cm, "BranchVectors").def("__len__", &cavity::BranchVectors::size);
  py::class_<cavity::NeedleDensity>(cm, "NeedleDensity")
      .def_readonly("rho_pp", &cavity::NeedleDensity::rho_pp)
      .def_readonly("rho_mm", &cavity::NeedleDensity::rho_mm)
      .def_readonly("rho_pm", &cavity::NeedleDensity::rho_pm)
      .def("matrix", &cavity::NeedleDensity::matrix);
  cm.def("pass_hamiltonian", &cavity::pass_hamiltonian);
  cm.def("single_pass_closed", &cavity::single_pass_closed, py::arg("system"), py::arg("spin"), py::arg("params"));
  cm.def("single_pass_numeric", &cavity::single_pass_numeric, py::arg("system"), py::arg("spin"), py::arg("params"),
         py::arg("steps"));
  cm.def("branch_vectors", &cavity::branch_vectors, py::arg("system"), py::arg("bath"), py::arg("params"));
  cm.def("inner_aa", &cavity::inner_aa);
  cm.def("inner_bb", &cavity::inner_bb);
  cm.def("inner_ab", &cavity::inner_ab);
  cm.def("inner_ab_approx", &cavity::inner_ab_approx, py::arg("bath"), py::arg("params"),
         py::arg("max_ratio") = cavity::kWeakCouplingRatio);
  cm.def("reduced_density_needle", &cavity::reduced_density_needle, py::arg("system"), py::arg("branches"));
  cm.def("integrated_coupling", &cavity::integrated_coupling);

  // -- realclock -------------------------------------------------------------
  auto rm = m.def_submodule("realclock");
  py::class_<realclock::ClockChannel>(rm, "ClockChannel")
      .def(py::init([](double tp, double a) { return realclock::ClockChannel{tp, a}; }), py::arg("t_planck") = 5.39e-44,
           py::arg("clock_exponent") = 1.0 / 3.0)
      .def_readwrite("t_planck", &realclock::ClockChannel::t_planck)
      .def_readwrite("clock_exponent", &realclock::ClockChannel::clock_exponent);
  py::class_<realclock::RevivalVerdict>(rm, "RevivalVerdict")
      .def_readonly("killed", &realclock::RevivalVerdict::killed)
      .def_readonly("margin", &realclock::RevivalVerdict::margin)
      .def_readonly("log_damping", &realclock::RevivalVerdict::log_damping)
      .def_readonly("log_floor", &realclock::RevivalVerdict::log_floor);
  rm.def("damping_factor", &realclock::damping_factor, py::arg("omega"), py::arg("t"), py::arg("channel"));
  rm.def("damping_exponent", &realclock::damping_exponent, py::arg("omega"), py::arg("t"), py::arg("channel"));
  rm.def("theta", &realclock::theta, py::arg("tau"), py::arg("channel"));
  rm.def("bohr_matrix", &realclock::bohr_matrix, py::arg("B"), py::arg("gamma1"), py::arg("gamma2"),
         py::arg("hbar"));
  rm.def("damp_density",
         [](const Matrix& rho, const Eigen::MatrixXd& bohr, double theta) {
           return realclock::damp_density(DensityMatrix(rho), bohr, theta).entries();
         },
         py::arg("rho"), py::arg("bohr"), py::arg("theta"));
  rm.def("damped_z", &realclock::damped_z, py::arg("bath"), py::arg("t"), py::arg("channel"));
  rm.def("revival_killed", &realclock::revival_killed, py::arg("n"), py::arg("g"), py::arg("channel"));
  rm.def("critical_particle_count", &realclock::critical_particle_count, py::arg("g"), py::arg("channel"),
         py::arg("n_max") = 1000000);

  // -- despagnat -------------------------------------------------------------
  auto dm = m.def_submodule("despagnat");
  py::class_<despagnat::MExpectation>(dm, "MExpectation")
      .def_readonly("value", &despagnat::MExpectation::value)
      .def_readonly("term", &despagnat::MExpectation::term)
      .def_property_readonly("regime", [](const despagnat::MExpectation& e) { return despagnat::to_string(e.regime); });
  py::class_<despagnat::KExponent>(dm, "KExponent")
      .def_readonly("k", &despagnat::KExponent::k)
      .def_readonly("lower_bound", &despagnat::KExponent::lower_bound)
      .def_readonly("alternate", &despagnat::KExponent::alternate);
  dm.def("m_expect_unitary", &despagnat::m_expect_unitary, py::arg("system"), py::arg("bath"), py::arg("params"),
         py::arg("max_ratio") = cavity::kWeakCouplingRatio);
  dm.def("m_expect_collapsed", &despagnat::m_expect_collapsed);
  dm.def("m_expect_damped",
         py::overload_cast<const QubitAmplitudes&, const Bath&, const cavity::PassParams&, double, double>(
             &despagnat::m_expect_damped),
         py::arg("system"), py::arg("bath"), py::arg("params"), py::arg("theta"),
         py::arg("max_ratio") = cavity::kWeakCouplingRatio);
  dm.def("k_exponent", &despagnat::k_exponent, py::arg("n"), py::arg("B"), py::arg("gamma1"), py::arg("gamma2"),
         py::arg("tau"), py::arg("channel"), py::arg("hbar") = PhysicalConstants{}.hbar);
  dm.def("collapse_distinguishable",
         [](double k) { return std::string(despagnat::to_string(despagnat::collapse_distinguishable(k))); });

  // -- feasibility -----------------------------------------------------------
  auto fm = m.def_submodule("feasibility");
  py::class_<feasibility::Check>(fm, "Check")
      .def_readonly("name", &feasibility::Check::name)
      .def_readonly("lhs", &feasibility::Check::lhs)
      .def_readonly("rhs", &feasibility::Check::rhs)
      .def_readonly("passed", &feasibility::Check::pass)
      .def_readonly("margin", &feasibility::Check::margin);
  py::class_<feasibility::FeasibilityReport>(fm, "FeasibilityReport")
      .def_readonly("checks", &feasibility::FeasibilityReport::checks)
      .def_readonly("overall", &feasibility::FeasibilityReport::overall)
      .def("find", [](const feasibility::FeasibilityReport& r, const std::string& name) -> py::object {
        const auto* c = r.find(name);
        return c ? py::cast(*c) : py::none();
      });
  fm.def("make_scenario",
         [](const std::string& name, std::size_t n) { return feasibility::make_scenario(name, n); },
         py::arg("preset"), py::arg("n"));
  fm.def("full_report", &feasibility::full_report, py::arg("scenario"), py::arg("n"));
  fm.def("packet_chain_analysis", &feasibility::packet_chain_analysis);
  fm.def("packet_chain_d_max", &feasibility::packet_chain_d_max);
  fm.def("decoherence_bound", &feasibility::decoherence_bound);
  fm.def("transverse_velocity", py::overload_cast<const PhysicalScenario&>(&feasibility::transverse_velocity));
  fm.def("min_dispersion", &feasibility::min_dispersion, py::arg("t"), py::arg("mass"),
         py::arg("hbar") = PhysicalConstants{}.hbar);
  fm.def("packet_width", &feasibility::packet_width, py::arg("t"), py::arg("mass"), py::arg("delta"),
         py::arg("hbar") = PhysicalConstants{}.hbar);
  fm.def("tau_upper_bound", &feasibility::tau_upper_bound);
  fm.def("mass_moment_rhs",
         [](double n, const realclock::ClockChannel& ch) { return feasibility::mass_moment_rhs(n, ch); },
         py::arg("n"), py::arg("channel"));

  // -- undecidability --------------------------------------------------------
  auto um = m.def_submodule("undecidability");
  um.def("three_spin_event_state", &undecidability::three_spin_event_state, py::arg("c1"), py::arg("c2"));
  um.def(
      "margin",
      [](const Vector& state, double omega, double theta, double epsilon) {
        const auto n_qubits = static_cast<std::size_t>(std::llround(std::log2(static_cast<double>(state.size()))));
        const auto projectors = undecidability::pointer_projectors(n_qubits);
        const auto r = undecidability::undecidability_margin(
            state, projectors, {undecidability::pointer_energies(n_qubits, omega), theta}, epsilon);
        return py::make_tuple(r.margin, r.event);
      },
      py::arg("state"), py::arg("omega"), py::arg("theta"), py::arg("epsilon") = undecidability::kDefaultEpsilon,
      "(margin, event) for pointer dephasing of the leading qubit.");

  // -- oracle ----------------------------------------------------------------
  auto om = m.def_submodule("oracle");
  py::class_<oracle::DenseState>(om, "DenseState")
      .def_property_readonly("n_env", &oracle::DenseState::n_env)
      .def_property_readonly("amplitudes", &oracle::DenseState::amplitudes);
  om.def("dense_from_product", &oracle::dense_from_product, py::arg("system"), py::arg("bath"));
  om.def("dense_evolve_zurek", &oracle::dense_evolve_zurek, py::arg("state"), py::arg("bath"), py::arg("t"));
  om.def("dense_evolve_cavity", &oracle::dense_evolve_cavity, py::arg("state"), py::arg("bath"), py::arg("params"));
  om.def("dense_m_expect", &oracle::dense_m_expect);
  om.def("needle_reduced", &oracle::needle_reduced);
}

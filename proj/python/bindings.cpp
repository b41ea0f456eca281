#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vlcwdm/allocator.hpp"
#include "vlcwdm/errors.hpp"
#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/optics.hpp"
#include "vlcwdm/scenario.hpp"
#include "vlcwdm/serdes.hpp"

namespace py = pybind11;
using namespace vlcwdm;

PYBIND11_MODULE(_vlcwdm, m) {
  m.doc() = "Indoor multi-user WDM visible-light links: channel model, exact "
            "(luminaire, wavelength) allocation, Monte-Carlo trend driver.";

  py::register_exception<infeasible_error>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<io_error>(m, "IoError", PyExc_OSError);

  m.attr("NUM_WAVELENGTHS") = kNumWavelengths;
  m.attr("ELECTRON_CHARGE") = kElectronCharge;
  m.attr("ZERO_SINR_DB_FLOOR") = kZeroSinrDbFloor;
  m.attr("BRUTE_FORCE_MAX_USERS") = kBruteForceMaxUsers;

  py::enum_<Wavelength>(m, "Wavelength")
      .value("red", Wavelength::Red)
      .value("yellow", Wavelength::Yellow)
      .value("green", Wavelength::Green)
      .value("blue", Wavelength::Blue);

  py::enum_<ObjectiveMode>(m, "ObjectiveMode")
      .value("surrogate", ObjectiveMode::surrogate)
      .value("true_sinr", ObjectiveMode::true_sinr);

  py::enum_<AllocatorMode>(m, "AllocatorMode")
      .value("optimal_surrogate", AllocatorMode::optimal_surrogate)
      .value("optimal_true_sinr", AllocatorMode::optimal_true_sinr)
      .value("greedy", AllocatorMode::greedy)
      .value("random", AllocatorMode::random);

  py::class_<Vec3>(m, "Vec3")
      .def(py::init<>())
      .def(py::init([](double x, double y, double z) { return Vec3{x, y, z}; }),
           py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &Vec3::x)
      .def_readwrite("y", &Vec3::y)
      .def_readwrite("z", &Vec3::z)
      .def("__repr__", [](const Vec3& v) {
        return "Vec3(" + format_g17(v.x) + ", " + format_g17(v.y) + ", " + format_g17(v.z) + ")";
      });
  m.def("dot", &dot);
  m.def("norm", &norm);
  m.def("normalized", &normalized);

  py::class_<Luminaire>(m, "Luminaire")
      .def(py::init<>())
      .def_readwrite("position", &Luminaire::position)
      .def_readwrite("tx_power", &Luminaire::tx_power)
      .def_readwrite("orientation", &Luminaire::orientation)
      .def_readwrite("half_power_semiangle_deg", &Luminaire::half_power_semiangle_deg);

  py::class_<RoomConfig>(m, "RoomConfig")
      .def(py::init<>())
      .def_static("default_room", &RoomConfig::default_room)
      .def_readwrite("width", &RoomConfig::width)
      .def_readwrite("length", &RoomConfig::length)
      .def_readwrite("height", &RoomConfig::height)
      .def_readwrite("floor_height", &RoomConfig::floor_height)
      .def_readwrite("power_multiplier", &RoomConfig::power_multiplier)
      .def_readwrite("luminaires", &RoomConfig::luminaires)
      .def("validate", &RoomConfig::validate);

  py::class_<UserPosition>(m, "UserPosition")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return UserPosition{x, y, {0.0, 0.0, 1.0}}; }),
           py::arg("x"), py::arg("y"))
      .def_readwrite("x", &UserPosition::x)
      .def_readwrite("y", &UserPosition::y)
      .def_readwrite("normal", &UserPosition::normal);

  py::class_<ReceiverModel>(m, "ReceiverModel")
      .def(py::init<>())
      .def_readwrite("responsivity", &ReceiverModel::responsivity)
      .def_readwrite("detector_area", &ReceiverModel::detector_area)
      .def_readwrite("fov_deg", &ReceiverModel::fov_deg)
      .def_readwrite("noise_current_density", &ReceiverModel::noise_current_density)
      .def_readwrite("bandwidth", &ReceiverModel::bandwidth)
      .def_readwrite("rate_cap", &ReceiverModel::rate_cap)
      .def_readwrite("ambient_current", &ReceiverModel::ambient_current)
      .def("validate", &ReceiverModel::validate);

  m.def("lambertian_order", &lambertian_order, py::arg("half_power_semiangle_deg"));
  m.def("los_gain_at", &los_gain_at, py::arg("tx_pos"), py::arg("tx_axis"), py::arg("m"),
        py::arg("rx_pos"), py::arg("rx_normal"), py::arg("detector_area"), py::arg("fov_deg"));
  m.def("los_gain", &los_gain, py::arg("tx"), py::arg("rx"), py::arg("floor_height"),
        py::arg("detector_area"), py::arg("fov_deg"));
  m.def("gain_matrix", &gain_matrix, py::arg("room"), py::arg("users"), py::arg("receiver"));

  py::class_<PairChoice>(m, "PairChoice")
      .def(py::init<>())
      .def(py::init([](int luminaire, Wavelength w) { return PairChoice{luminaire, w}; }),
           py::arg("luminaire"), py::arg("wavelength"))
      .def_readwrite("luminaire", &PairChoice::luminaire)
      .def_readwrite("wavelength", &PairChoice::wavelength)
      .def("__eq__", [](const PairChoice& a, const PairChoice& b) { return a == b; })
      .def("__repr__", [](const PairChoice& p) {
        return "PairChoice(" + std::to_string(p.luminaire) + ", " +
               std::string(to_string(p.wavelength)) + ")";
      });

  m.def("validate_assignment", &validate_assignment, py::arg("assignment"),
        py::arg("n_luminaires"));

  py::class_<NoiseBreakdown>(m, "NoiseBreakdown")
      .def(py::init<>())
      .def_readwrite("sigma_bn_sq", &NoiseBreakdown::sigma_bn_sq)
      .def_readwrite("sigma_s_sq", &NoiseBreakdown::sigma_s_sq)
      .def_readwrite("sigma_pr_sq", &NoiseBreakdown::sigma_pr_sq)
      .def_readwrite("total", &NoiseBreakdown::total);

  py::class_<LinkReport>(m, "LinkReport")
      .def(py::init<>())
      .def_readwrite("signal_sq", &LinkReport::signal_sq)
      .def_readwrite("interference_sq", &LinkReport::interference_sq)
      .def_readwrite("noise", &LinkReport::noise)
      .def_readwrite("sinr", &LinkReport::sinr)
      .def_readwrite("sinr_db", &LinkReport::sinr_db)
      .def_readwrite("achievable_rate", &LinkReport::achievable_rate);

  m.def("signal_photocurrent", &signal_photocurrent, py::arg("receiver"), py::arg("tx_power_w"),
        py::arg("gain"));
  m.def("noise_variance", &noise_variance, py::arg("receiver"), py::arg("signal_current"),
        py::arg("background_current"), py::arg("bandwidth_hz"));
  m.def("background_current", &background_current, py::arg("room"), py::arg("receiver"),
        py::arg("user_gains"), py::arg("wavelength"), py::arg("carriers"));
  m.def("interference_sq", &interference_sq, py::arg("users"), py::arg("assignment"),
        py::arg("gains"), py::arg("room"), py::arg("receiver"), py::arg("user"));
  m.def("sinr", &sinr, py::arg("users"), py::arg("assignment"), py::arg("room"),
        py::arg("receiver"));
  m.def("q_function", &q_function);
  m.def("q_function_inverse", &q_function_inverse);
  m.def("ook_ber", &ook_ber, py::arg("sinr"));
  m.def("ber_target_sinr", &ber_target_sinr, py::arg("target_ber") = 1e-9);
  m.def("achievable_rate", &achievable_rate, py::arg("link"), py::arg("receiver"),
        py::arg("target_ber") = 1e-9);

  py::class_<ObjectiveWeights>(m, "ObjectiveWeights")
      .def(py::init<>())
      .def_readwrite("alpha_s", &ObjectiveWeights::alpha_s)
      .def_readwrite("alpha_n", &ObjectiveWeights::alpha_n)
      .def_readwrite("alpha_i", &ObjectiveWeights::alpha_i);

  py::class_<AllocationInstance>(m, "AllocationInstance")
      .def(py::init<>())
      .def_readwrite("n_users", &AllocationInstance::n_users)
      .def_readwrite("n_luminaires", &AllocationInstance::n_luminaires)
      .def_readwrite("weights", &AllocationInstance::weights)
      .def_readwrite("signal_sq", &AllocationInstance::signal_sq)
      .def_readwrite("noise_var", &AllocationInstance::noise_var)
      .def("pair_count", &AllocationInstance::pair_count)
      .def("idx", &AllocationInstance::idx)
      .def("s", &AllocationInstance::s)
      .def("n", &AllocationInstance::n)
      .def("interference", &AllocationInstance::interference);

  m.def("build_instance", &build_instance, py::arg("room"), py::arg("users"), py::arg("receiver"),
        py::arg("weights") = ObjectiveWeights{});

  py::class_<SolverStats>(m, "SolverStats")
      .def(py::init<>())
      .def_readwrite("nodes_explored", &SolverStats::nodes_explored)
      .def_readwrite("nodes_pruned", &SolverStats::nodes_pruned)
      .def_readwrite("wall_time_s", &SolverStats::wall_time_s);

  py::class_<AllocationSolution>(m, "AllocationSolution")
      .def(py::init<>())
      .def_readwrite("assignment", &AllocationSolution::assignment)
      .def_readwrite("surrogate_objective", &AllocationSolution::surrogate_objective)
      .def_readwrite("sum_sinr", &AllocationSolution::sum_sinr)
      .def_readwrite("stats", &AllocationSolution::stats);

  m.def("surrogate_objective", &surrogate_objective, py::arg("instance"), py::arg("assignment"));
  m.def("instance_sum_sinr", &instance_sum_sinr, py::arg("instance"), py::arg("assignment"));
  m.def("solve_bnb", &solve_bnb, py::arg("instance"),
        py::arg("mode") = ObjectiveMode::surrogate,
        py::call_guard<py::gil_scoped_release>());
  m.def("brute_force", &brute_force, py::arg("instance"),
        py::arg("mode") = ObjectiveMode::surrogate,
        py::call_guard<py::gil_scoped_release>());
  m.def("baseline_random", &baseline_random, py::arg("instance"), py::arg("seed"));
  m.def("baseline_greedy", &baseline_greedy, py::arg("instance"));

  py::class_<MilpDescription>(m, "MilpDescription")
      .def_readonly("instance", &MilpDescription::instance)
      .def_readonly("n_binary_vars", &MilpDescription::n_binary_vars)
      .def_readonly("n_pair_vars", &MilpDescription::n_pair_vars)
      .def_readonly("n_equalities", &MilpDescription::n_equalities)
      .def_readonly("n_inequalities", &MilpDescription::n_inequalities)
      .def("objective_coefficient", &MilpDescription::objective_coefficient)
      .def("pair_coefficient", &MilpDescription::pair_coefficient)
      .def("objective_at", &MilpDescription::objective_at)
      .def("pair_values_at", &MilpDescription::pair_values_at);

  m.def("formulate_milp", &formulate_milp, py::arg("instance"));

  py::class_<ScenarioSpec>(m, "ScenarioSpec")
      .def(py::init<>())
      .def_readwrite("room", &ScenarioSpec::room)
      .def_readwrite("receiver", &ScenarioSpec::receiver)
      .def_readwrite("user_counts", &ScenarioSpec::user_counts)
      .def_readwrite("trials_per_point", &ScenarioSpec::trials_per_point)
      .def_readwrite("seed", &ScenarioSpec::seed)
      .def_readwrite("allocator_mode", &ScenarioSpec::allocator_mode)
      .def_readwrite("weights", &ScenarioSpec::weights)
      .def_readwrite("threads", &ScenarioSpec::threads)
      .def("validate", &ScenarioSpec::validate);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def(py::init<>())
      .def_readwrite("n_users", &TrialRecord::n_users)
      .def_readwrite("trial_index", &TrialRecord::trial_index)
      .def_readwrite("seed", &TrialRecord::seed)
      .def_readwrite("users", &TrialRecord::users)
      .def_readwrite("assignment", &TrialRecord::assignment)
      .def_readwrite("reports", &TrialRecord::reports)
      .def_readwrite("surrogate_objective", &TrialRecord::surrogate_objective)
      .def_readwrite("throughput_bps", &TrialRecord::throughput_bps)
      .def_readwrite("mean_sinr_db_all", &TrialRecord::mean_sinr_db_all)
      .def_readwrite("mean_sinr_db_served", &TrialRecord::mean_sinr_db_served)
      .def_readwrite("wavelength_usage", &TrialRecord::wavelength_usage);

  py::class_<TrendPoint>(m, "TrendPoint")
      .def(py::init<>())
      .def_readwrite("n_users", &TrendPoint::n_users)
      .def_readwrite("mean_throughput_bps", &TrendPoint::mean_throughput_bps)
      .def_readwrite("mean_sinr_db_all", &TrendPoint::mean_sinr_db_all)
      .def_readwrite("mean_sinr_db_served", &TrendPoint::mean_sinr_db_served)
      .def_readwrite("trials", &TrendPoint::trials);

  py::class_<TrendResult>(m, "TrendResult")
      .def(py::init<>())
      .def_readwrite("seed", &TrendResult::seed)
      .def_readwrite("allocator_mode", &TrendResult::allocator_mode)
      .def_readwrite("points", &TrendResult::points);

  m.def("splitmix64", &splitmix64, py::arg("x"));
  m.def("trial_seed", &trial_seed, py::arg("master_seed"), py::arg("n_users"),
        py::arg("trial_index"));
  m.def("generate_users", &generate_users, py::arg("room"), py::arg("n"), py::arg("seed"));
  m.def("run_trial", &run_trial, py::arg("spec"), py::arg("n_users"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_trend", &run_trend, py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("wavelength_usage", &wavelength_usage, py::arg("assignment"));

  m.def("format_g17", &format_g17);
  m.def("parse_counts", &parse_counts);
  m.def("load_config", &load_config, py::arg("json_text"));
  m.def("load_config_file", &load_config_file, py::arg("path"));
  m.def("config_to_json", &config_to_json, py::arg("spec"));
  m.def("link_reports_csv", &link_reports_csv, py::arg("users"), py::arg("assignment"),
        py::arg("reports"));
  m.def("link_reports_json", &link_reports_json, py::arg("users"), py::arg("assignment"),
        py::arg("reports"));
  m.def("solution_to_json", &solution_to_json, py::arg("solution"));
  m.def("instance_to_json", &instance_to_json, py::arg("instance"));
  m.def("instance_from_json", &instance_from_json, py::arg("json_text"));
  m.def("trend_to_csv", &trend_to_csv, py::arg("trend"));
  m.def("trend_to_json", &trend_to_json, py::arg("trend"));
  m.def("users_from_json", &users_from_json, py::arg("json_text"));
}

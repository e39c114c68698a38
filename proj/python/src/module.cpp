#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hugperch/config.hpp"
#include "hugperch/design_explorer.hpp"
#include "hugperch/error.hpp"
#include "hugperch/flight_kinematics.hpp"
#include "hugperch/friction_lab.hpp"
#include "hugperch/report.hpp"
#include "hugperch/units.hpp"

namespace py = pybind11;
using namespace hugperch;

namespace {

SplitSearchOptions options_for(double grid_step_percent) {
  return SplitSearchOptions::from_step_percent(grid_step_percent);
}

py::dict solution_dict(const StaticSolution& s) {
  py::list forces;
  for (const auto& f : s.forces) {
    py::dict c;
    c["side"] = f.body.is_fuselage() ? "fuselage" : (f.body.side == Side::Right ? "right" : "left");
    c["segment"] = f.body.segment;
    c["normal"] = f.normal;
    c["tangential"] = f.tangential;
    c["vertical"] = f.vertical;
    c["point"] = py::make_tuple(f.application_point.x(), f.application_point.y());
    forces.append(c);
  }
  py::dict d;
  d["feasible"] = s.feasible;
  d["status"] = std::string(to_string(s.status));
  d["mu_total"] = s.split.mu_total;
  d["mu_tangential"] = s.split.mu_tangential;
  d["mu_vertical"] = s.split.mu_vertical;
  d["horizontal_fraction"] = s.split.horizontal_fraction;
  d["mobilization"] = s.split.mobilization;
  d["squeeze_force"] = s.squeeze_force;
  d["vertical_capacity"] = s.vertical_capacity;
  d["supported_weight"] = s.supported_weight;
  d["wrap_angle"] = s.wrap.wrap_angle;
  d["spring_moments"] = s.spring_moments;
  d["forces"] = forces;
  return d;
}

py::dict impact_dict(const ImpactEvent& e, const ReorientationOutcome& o) {
  py::dict d;
  d["t_impact"] = e.t_impact;
  d["impact_index"] = e.impact_index;
  d["impact_speed"] = e.impact_speed;
  d["impact_angle"] = e.impact_angle;
  d["peak_acceleration"] = e.peak_acceleration;
  d["peak_force"] = e.peak_force;
  d["success"] = o.success;
  d["max_pitch"] = o.max_pitch;
  d["duration_to_vertical"] = o.duration_to_vertical ? py::cast(*o.duration_to_vertical) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hugperch, m) {
  m.doc() = "Statics, design sweeps and flight analysis for a hugging-wing perching robot.";

  static py::exception<Error> error(m, "HugperchError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.attr("GRAVITY") = kGravity;

  py::class_<RobotGeometry>(m, "RobotGeometry")
      .def(py::init([](double base, std::vector<double> lengths, std::vector<double> stiffnesses, double mass) {
             RobotGeometry r{base, std::move(lengths), std::move(stiffnesses), mass};
             r.validate();
             return r;
           }),
           py::arg("rigid_base_width"), py::arg("segment_lengths"), py::arg("spring_stiffnesses"),
           py::arg("body_mass"))
      .def_readonly("rigid_base_width", &RobotGeometry::rigid_base_width)
      .def_readonly("segment_lengths", &RobotGeometry::segment_lengths)
      .def_readonly("spring_stiffnesses", &RobotGeometry::spring_stiffnesses)
      .def_readonly("body_mass", &RobotGeometry::body_mass)
      .def_property_readonly("wingspan", &RobotGeometry::wingspan)
      .def("__repr__", [](const RobotGeometry& r) { return "<RobotGeometry " + format_robot(r) + ">"; });

  py::class_<PoleSpec>(m, "PoleSpec")
      .def(py::init([](double diameter, double mu_static, std::string label) {
             PoleSpec p{diameter, mu_static, std::move(label)};
             p.validate();
             return p;
           }),
           py::arg("diameter"), py::arg("mu_static"), py::arg("label") = "")
      .def_readonly("diameter", &PoleSpec::diameter)
      .def_readonly("mu_static", &PoleSpec::mu_static)
      .def_readonly("label", &PoleSpec::label);

  m.def("load_robot", [](const std::vector<std::filesystem::path>& paths) {
    const RunConfig cfg = load_run_config(paths);
    if (!cfg.robot) throw Error(ErrorKind::Validation, "configuration has no [robot] section");
    return *cfg.robot;
  }, py::arg("paths"), "Robot from one or more config files.");

  m.def("load_poles", [](const std::vector<std::filesystem::path>& paths) { return load_run_config(paths).poles; },
        py::arg("paths"));

  m.def("diameter_range", [](const RobotGeometry& robot) {
    const DiameterRange r = diameter_range(robot);
    return py::make_tuple(r.d_min, r.d_max);
  }, py::arg("robot"), "(d_min, d_max) in metres.");

  m.def("solve", [](const RobotGeometry& robot, const PoleSpec& pole, std::optional<double> weight, double step) {
    const WrapGeometry wrap = solve_wrap(robot, pole);
    const StaticSolution s =
        find_min_friction_split(wrap, robot, weight.value_or(robot.body_mass * kGravity), options_for(step));
    py::dict d = solution_dict(s);
    const EquilibriumResiduals res = equilibrium_residuals(s, robot);
    d["force_residual"] = res.max_force;
    d["moment_residual"] = res.max_moment;
    return d;
  }, py::arg("robot"), py::arg("pole"), py::arg("weight") = py::none(), py::arg("grid_step") = 0.5);

  m.def("max_payload", [](const RobotGeometry& robot, const PoleSpec& pole, double step) {
    return max_payload(robot, pole, options_for(step));
  }, py::arg("robot"), py::arg("pole"), py::arg("grid_step") = 0.5);

  m.def("sweep", [](const RobotGeometry& robot, std::vector<double> diameters, std::vector<double> mu_values,
                    std::optional<double> weight, double step, bool parallel) {
    SweepGrid grid{std::move(diameters), std::move(mu_values), robot};
    SweepTable t;
    {
      py::gil_scoped_release release;
      t = sweep(grid, weight.value_or(robot.body_mass * kGravity), options_for(step), parallel);
    }
    py::list rows;
    for (const auto& c : t.cells) {
      py::dict d;
      d["diameter"] = c.diameter;
      d["mu_static"] = c.mu_static;
      d["feasible"] = c.feasible;
      d["squeeze_force"] = c.squeeze_force;
      d["max_payload"] = c.max_payload;
      d["vertical_fraction"] = c.vertical_fraction;
      d["mu_required"] = c.mu_required;
      d["horizontal_fraction"] = c.horizontal_fraction;
      d["near_range"] = c.near_range;
      d["error"] = c.error ? py::cast(std::string(to_string(*c.error))) : py::none();
      rows.append(d);
    }
    return rows;
  }, py::arg("robot"), py::arg("diameters"), py::arg("mu_values"), py::arg("weight") = py::none(),
     py::arg("grid_step") = 0.5, py::arg("parallel") = true, "Row-major list of cell dicts.");

  m.def("sweep_csv", [](const RobotGeometry& robot, std::vector<double> diameters, std::vector<double> mu_values,
                        std::optional<double> weight, double step) {
    SweepGrid grid{std::move(diameters), std::move(mu_values), robot};
    py::gil_scoped_release release;
    return sweep_csv(sweep(grid, weight.value_or(robot.body_mass * kGravity), options_for(step), true));
  }, py::arg("robot"), py::arg("diameters"), py::arg("mu_values"), py::arg("weight") = py::none(),
     py::arg("grid_step") = 0.5);

  m.def("predict", [](const RobotGeometry& robot, const std::vector<PoleSpec>& poles, double step) {
    py::list rows;
    for (const auto& p : predict_static_experiments(robot, poles, options_for(step))) {
      py::dict d;
      d["label"] = p.pole.label;
      d["diameter"] = p.pole.diameter;
      d["mu_static"] = p.pole.mu_static;
      d["body_supported"] = p.body_supported;
      d["max_payload"] = p.max_payload;
      d["predicted_mass"] = p.predicted_mass;
      d["below_min_diameter"] = p.below_min_diameter;
      d["above_max_diameter"] = p.above_max_diameter;
      rows.append(d);
    }
    return rows;
  }, py::arg("robot"), py::arg("poles"), py::arg("grid_step") = 0.5);

  m.def("analyze_flight", [](const std::filesystem::path& path, std::optional<double> mass, double threshold_g,
                             double vertical_threshold_deg, double window) {
    const TrackedTrajectory traj = load_trajectory(path, mass);
    const BodyStates states = estimate_body_states(traj);
    ImpactOptions io;
    io.threshold_g = threshold_g;
    ReorientationOptions ro;
    ro.vertical_threshold = deg_to_rad(vertical_threshold_deg);
    ro.window = window;
    const ImpactEvent e = detect_impact(traj, states, io);
    return impact_dict(e, classify_reorientation(traj, e, ro));
  }, py::arg("path"), py::arg("mass") = py::none(), py::arg("impact_threshold_g") = 3.0,
     py::arg("vertical_threshold_deg") = 85.0, py::arg("window") = 0.5);

  m.def("mu_from_pull", &mu_from_pull, py::arg("f_pull"), py::arg("mass"));
  m.def("mu_from_angle", &mu_from_angle, py::arg("theta"));
  m.def("mu_from_vertical_tool", &mu_from_vertical_tool, py::arg("f_pull"), py::arg("mass"), py::arg("stiffness"),
        py::arg("compression"));
  m.def("friction_csv", [](const std::filesystem::path& path) {
    return friction_csv(parse_friction_csv(read_text_file(path), path.string()));
  }, py::arg("path"));
}

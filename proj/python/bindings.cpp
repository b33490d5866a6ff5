#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "silsrob/simulation.hpp"
#include "silsrob/validation.hpp"

namespace py = pybind11;
using namespace silsrob;

namespace {

PlatformPose to_pose(const std::array<double, 6>& p) { return {p[0], p[1], p[2], p[3], p[4], p[5]}; }

SphericalGeometry geometry_for(const std::string& side) {
  if (side == "left") return SphericalGeometry::left_default();
  if (side == "right") return SphericalGeometry::right_default();
  throw std::invalid_argument("side must be 'left' or 'right'");
}

IkBranch branch_for(const std::string& name) {
  const auto b = parse_branch(name);
  if (!b) throw std::invalid_argument("branch must be 'principal' or 'mirror'");
  return *b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kinematics and motion planning for a SILS parallel robot with spherical RCM modules";

  static py::exception<KinematicsError> kinematics_error(m, "KinematicsError", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const KinematicsError& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      kinematics_error(msg.c_str());
    } catch (const ParseError& e) {
      parse_error(e.what());
    } catch (const ValidationError& e) {
      validation_error(e.what());
    }
  });

  m.def(
      "fk",
      [](const std::array<double, 6>& pose, const std::array<double, 3>& joints, const std::string& side) {
        const Vec3 t = fk_tip_fixed(to_pose(pose), {joints[0], joints[1], joints[2]}, geometry_for(side));
        return std::array<double, 3>{t.x, t.y, t.z};
      },
      py::arg("pose"), py::arg("joints"), py::arg("side") = "left",
      "Fixed-frame tip (mm) from pose (x, y, z, psi, theta, phi) and joints (q1, q2, q3).");

  m.def(
      "ik",
      [](const std::array<double, 6>& pose, const std::array<double, 3>& tip, const std::string& side,
         const std::string& branch) {
        const SphericalJoints j =
            ik_full(to_pose(pose), {tip[0], tip[1], tip[2]}, geometry_for(side), branch_for(branch));
        return std::array<double, 3>{j.q1, j.q2, j.q3};
      },
      py::arg("pose"), py::arg("tip"), py::arg("side") = "left", py::arg("branch") = "principal",
      "Joints (q1 deg, q2 deg, q3 mm) that place the tip at a fixed-frame point.");

  m.def(
      "profile",
      [](double delta, double omega_max, double eps_max) {
        const TrapezoidProfile p = plan_profile(delta, {omega_max, eps_max});
        py::dict d;
        d["t_acc"] = p.t_acc;
        d["t_cruise"] = p.t_cruise;
        d["t_total"] = p.t_total;
        d["peak_rate"] = p.peak_rate;
        return d;
      },
      py::arg("delta"), py::arg("omega_max") = 10.0, py::arg("eps_max") = 5.0);

  m.def(
      "run_scenario_text",
      [](const std::string& text, std::optional<double> dt, const std::string& plot_data) {
        Scenario s = parse_scenario(text);
        s.output.reset();
        RunOptions opt;
        opt.dt = dt;
        const auto cols = parse_plot_data(plot_data);
        if (!cols) throw std::invalid_argument("plot_data must be full, fig5 or fig7");
        opt.columns = *cols;
        std::ostringstream out, err;
        const int code = run_scenario(s, opt, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("text"), py::arg("dt") = std::nullopt, py::arg("plot_data") = "full",
      "Plans a scenario given as text. Returns (exit_code, csv, diagnostics).");

  m.def("validate", [] {
    const ValidationReport r = run_validation();
    py::list out;
    for (const auto& o : r.results)
      out.append(py::make_tuple(o.name, o.max_error, o.tolerance, o.pass));
    return out;
  });
}

#include "silsrob/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "silsrob/errors.hpp"
#include "silsrob/simulation.hpp"

namespace silsrob {
namespace {

using oracles::Array4;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

OracleResult result(std::string name, double err, double tol, std::string detail = {}) {
  return {std::move(name), err, tol, err <= tol, std::move(detail)};
}

Mat4 random_transform(std::mt19937_64& rng) {
  const double pi = std::numbers::pi;
  return {euler_xyz(uniform(rng, -pi, pi), uniform(rng, -1.5, 1.5), uniform(rng, -pi, pi)),
          {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)}};
}

double max_abs_diff(const Array4& a, const Array4& b) {
  double e = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e = std::max(e, std::fabs(a[r][c] - b[r][c]));
  return e;
}

InputRates inputs_for(const PlanSample& s, const InstrumentState& st) {
  InputRates r;
  r.q1_dot = st.rates.q1_dot;
  r.q2_dot = st.rates.q2_dot;
  r.q3_dot = st.rates.q3_dot;
  r.psi_dot = s.pose_rates.psi_dot;
  r.theta_dot = s.pose_rates.theta_dot;
  r.q1_ddot = st.accels.q1_ddot;
  r.q2_ddot = st.accels.q2_ddot;
  r.q3_ddot = st.accels.q3_ddot;
  r.psi_ddot = s.pose_rates.psi_ddot;
  r.theta_ddot = s.pose_rates.theta_ddot;
  return r;
}

MotionPlan reference_plan(double dt) {
  Scenario s = reference_scenario();
  s.dt = dt;
  return plan_scenario(s);
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

SampledConfiguration sample_configuration(std::mt19937_64& rng) {
  SampledConfiguration c;
  c.pose = {uniform(rng, -200, 200), uniform(rng, -200, 200), uniform(rng, -600, -300),
            uniform(rng, -60, 60),   uniform(rng, -60, 60),   uniform(rng, -180, 180)};
  SphericalGeometry g;
  g.alpha = uniform(rng, 0, 30);
  g.beta = uniform(rng, 0, 30);
  c.geometry = uniform(rng, 0, 1) < 0.5 ? g : g.mirrored();
  c.joints = {uniform(rng, -80, 80), uniform(rng, -80, 80), uniform(rng, 10, 300)};
  return c;
}

Scenario reference_scenario() {
  Scenario s;
  s.motion = MotionType::Type4Reorient;
  s.start = {15.0, 20.0, -500.0, -15.0, 10.0, -60.0};
  s.d_psi = 15.0;
  s.d_theta = 25.0;
  s.angular = {10.0, 5.0};
  s.dt = 0.01;
  InstrumentConfig left;
  left.name = "left";
  left.geometry = SphericalGeometry::left_default();
  left.tip = Vec3{50.0, -50.0, -620.0};
  s.instruments.push_back(left);
  return s;
}

OracleResult check_euler_quaternion(std::mt19937_64& rng, int samples) {
  const double pi = std::numbers::pi;
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = uniform(rng, -pi, pi), b = uniform(rng, -pi, pi), c = uniform(rng, -pi, pi);
    err = std::max(err, max_abs_diff(euler_xyz(a, b, c), oracles::quaternion_euler_xyz(a, b, c)));
  }
  return result("euler_quaternion", err, 1e-12);
}

OracleResult check_euler_roundtrip(std::mt19937_64& rng, int samples) {
  const double pi = std::numbers::pi;
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = uniform(rng, -pi, pi);
    const double b = uniform(rng, -0.5 * pi + 1e-6, 0.5 * pi - 1e-6);
    const double c = uniform(rng, -pi, pi);
    const Vec3 back = euler_xyz_angles(euler_xyz(a, b, c));
    // Differences are wrapped to (-pi, pi] so +-pi aliases do not count as errors.
    const double angle_err =
        std::max({std::remainder(back.x - a, 2 * pi), std::remainder(back.y - b, 2 * pi),
                  std::remainder(back.z - c, 2 * pi)},
                 [](double u, double v) { return std::fabs(u) < std::fabs(v); });
    err = std::max(err, std::fabs(angle_err));
  }
  return result("euler_roundtrip", err, 1e-9);
}

OracleResult check_rotation_invariants(std::mt19937_64& rng, int samples) {
  const double pi = std::numbers::pi;
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = uniform(rng, -4 * pi, 4 * pi);
    for (const Mat3& r : {rot_x(a), rot_y(a), rot_z(a), euler_xyz(a, 0.3 * a, -0.7 * a)}) {
      err = std::max({err, orthonormality_error(r), std::fabs(determinant(r) - 1.0)});
    }
  }
  return result("rotation_invariants", err, 1e-12);
}

OracleResult check_compose_associativity(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Mat4 a = random_transform(rng), b = random_transform(rng), c = random_transform(rng);
    err = std::max(err, max_abs_diff(compose(a, compose(b, c)), compose(compose(a, b), c)));
  }
  return result("compose_associativity", err, 1e-12);
}

OracleResult check_homogeneous_product(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Mat4 a = random_transform(rng), b = random_transform(rng);
    err = std::max(err, max_abs_diff(oracles::to_array(compose(a, b)),
                                     oracles::matmul(oracles::to_array(a), oracles::to_array(b))));
  }
  return result("homogeneous_product", err, 1e-12);
}

OracleResult check_tip_norm(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    err = std::max(err, std::fabs(norm(tip_in_platform(c.joints, c.geometry)) - c.joints.q3) /
                            c.joints.q3);
  }
  return result("tip_norm", err, 1e-12);
}

OracleResult check_fk_dual_path(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    err = std::max(err, max_abs_diff(fk_tip_fixed(c.pose, c.joints, c.geometry),
                                     fk_tip_fixed_chain(c.pose, c.joints, c.geometry)));
  }
  return result("fk_dual_path", err, 1e-12);
}

OracleResult check_fk_reference(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    err = std::max(err, max_abs_diff(fk_tip_fixed(c.pose, c.joints, c.geometry),
                                     oracles::tip_fixed_reference(c.pose, c.joints, c.geometry)));
  }
  return result("fk_quaternion_reference", err, 1e-10);
}

OracleResult check_ik_roundtrip(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  double joint_err = 0.0;
  int flips = 0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    const Vec3 tip = fk_tip_fixed(c.pose, c.joints, c.geometry);
    const SphericalJoints j = ik_full(c.pose, tip, c.geometry, IkBranch::Principal);
    err = std::max(err, max_abs_diff(fk_tip_fixed(c.pose, j, c.geometry), tip));
    if (branch_of(j) != IkBranch::Principal) ++flips;
    joint_err = std::max({joint_err, std::fabs(j.q1 - c.joints.q1), std::fabs(j.q2 - c.joints.q2),
                          std::fabs(j.q3 - c.joints.q3)});
  }
  OracleResult r = result("ik_roundtrip", err, 1e-9,
                          fmt::format("branch flips {}, max joint recovery error {:.3e}", flips,
                                      joint_err));
  r.pass = r.pass && flips == 0 && joint_err <= 1e-6;
  return r;
}

OracleResult check_ik_mirror_roundtrip(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  int flips = 0;
  for (int i = 0; i < samples; ++i) {
    auto c = sample_configuration(rng);
    c.geometry.q2_min = -180.0;
    c.geometry.q2_max = 180.0;
    const double q2 = uniform(rng, 100.0, 170.0);
    c.joints.q2 = uniform(rng, 0, 1) < 0.5 ? q2 : -q2;
    const Vec3 tip = fk_tip_fixed(c.pose, c.joints, c.geometry);
    const SphericalJoints j = ik_full(c.pose, tip, c.geometry, IkBranch::Mirror);
    err = std::max(err, max_abs_diff(fk_tip_fixed(c.pose, j, c.geometry), tip));
    if (branch_of(j) != IkBranch::Mirror) ++flips;
  }
  OracleResult r = result("ik_mirror_roundtrip", err, 1e-9, fmt::format("branch flips {}", flips));
  r.pass = r.pass && flips == 0;
  return r;
}

OracleResult check_newton_ik() {
  const Scenario s = reference_scenario();
  const auto& ins = s.instruments.front();
  const SphericalJoints closed = ik_full(s.start, *ins.tip, ins.geometry);
  SphericalJoints numeric{0.0, 0.0, norm(*ins.tip - s.start.position())};
  const bool converged = oracles::newton_ik(s.start, *ins.tip, ins.geometry, numeric);
  const double err = std::max({std::fabs(closed.q1 - numeric.q1), std::fabs(closed.q2 - numeric.q2),
                               std::fabs(closed.q3 - numeric.q3)});
  OracleResult r = result("newton_ik", converged ? err : INFINITY, 1e-8,
                          fmt::format("q = ({:.9f}, {:.9f}, {:.9f})", closed.q1, closed.q2, closed.q3));
  return r;
}

OracleResult check_jacobian_fd(std::mt19937_64& rng, const oracles::JacobianFn& jacobian,
                               int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    const JacobianPair pair = jacobian(c.pose, c.joints, c.geometry);
    err = std::max(err, oracles::column_relative_error(
                            pair.b, oracles::fd_b_columns(c.pose, c.joints, c.geometry)));
  }
  return result("jacobian_finite_difference", err, 1e-6);
}

OracleResult check_jacobian_rate(std::mt19937_64& rng, int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    InputRates r;
    r.q1_dot = uniform(rng, -20, 20);
    r.q2_dot = uniform(rng, -20, 20);
    r.q3_dot = uniform(rng, -20, 20);
    r.psi_dot = uniform(rng, -20, 20);
    r.theta_dot = uniform(rng, -20, 20);
    const JacobianPair dot = jacobian_rate(c.pose, c.joints, c.geometry, r);
    const auto ref = oracles::fd_b_rate(c.pose, c.joints, c.geometry, r, jacobians);
    err = std::max(err, oracles::column_relative_error(dot.b, ref));
  }
  return result("jacobian_rate_finite_difference", err, 1e-6);
}

OracleResult check_compensation_velocity(std::mt19937_64& rng, const oracles::JacobianFn& jacobian,
                                         int samples) {
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto c = sample_configuration(rng);
    const double psi_dot = uniform(rng, -10, 10), theta_dot = uniform(rng, -10, 10);
    const JointRates q = compensation_rates(jacobian(c.pose, c.joints, c.geometry), psi_dot, theta_dot);
    // Tip velocity from the closed-form B, whatever Jacobian produced the rates.
    const JacobianPair exact = jacobians(c.pose, c.joints, c.geometry);
    InputRates in;
    in.q1_dot = q.q1_dot;
    in.q2_dot = q.q2_dot;
    in.q3_dot = q.q3_dot;
    in.psi_dot = psi_dot;
    in.theta_dot = theta_dot;
    err = std::max(err, norm(velocity_residual(exact, {}, in)));
  }
  return result("compensation_tip_velocity", err, 1e-9);
}

OracleResult check_profile_formulas() {
  const ProfileLimits lim{10.0, 5.0};
  const TrapezoidProfile trap = plan_profile(25.0, lim);
  const TrapezoidProfile tri = plan_profile(15.0, lim);
  const double err = std::max({std::fabs(trap.t_total - 4.5), std::fabs(trap.t_acc - 2.0),
                               std::fabs(trap.t_cruise - 0.5), std::fabs(tri.peak_rate - std::sqrt(75.0)),
                               std::fabs(tri.t_total - 2.0 * std::sqrt(3.0)),
                               std::fabs(profile_integral(trap) - 25.0),
                               std::fabs(profile_integral(tri) - 15.0)});
  return result("profile_formulas", err, 1e-12);
}

OracleResult check_plan_tip_drift() {
  const MotionPlan plan = reference_plan(0.01);
  const Vec3 tip0 = *reference_scenario().instruments.front().tip;
  double err = 0.0;
  for (const auto& s : plan.samples) err = std::max(err, norm(s.instruments.front().tip_fixed - tip0));
  return result("plan_tip_drift_ik", err, 1e-9,
                fmt::format("{} samples over {:.3f} s", plan.samples.size(), plan.duration()));
}

OracleResult check_plan_rk4_drift() {
  const Scenario s = reference_scenario();
  const auto& ins = s.instruments.front();
  const SphericalJoints j0 = ik_full(s.start, *ins.tip, ins.geometry, s.branch);
  const JointTrajectory traj =
      integrate_compensation(s.start, s.d_psi, s.d_theta, s.angular, 0.001, ins.geometry, j0);
  const TrapezoidProfile pp = plan_profile(s.d_psi, s.angular);
  const TrapezoidProfile tp = plan_profile(s.d_theta, s.angular);
  const double duration = std::max(pp.t_total, tp.t_total);
  double err = 0.0;
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    PlatformPose pose = s.start;
    pose.psi += sample_stretched(pp, duration, traj.t[k]).pos;
    pose.theta += sample_stretched(tp, duration, traj.t[k]).pos;
    err = std::max(err, norm(fk_tip_fixed(pose, traj.joints[k], ins.geometry) - *ins.tip));
  }
  return result("plan_tip_drift_rk4", err, 1e-3, "dt = 1 ms");
}

OracleResult check_plan_accel_residual() {
  const MotionPlan plan = reference_plan(0.01);
  const auto& g = reference_scenario().instruments.front().geometry;
  double err = 0.0;
  for (const auto& s : plan.samples) {
    const InstrumentState& st = s.instruments.front();
    const InputRates in = inputs_for(s, st);
    const JacobianPair pair = jacobians(s.pose, st.joints, g);
    JacobianPair pair_dot;
    pair_dot.b = oracles::fd_b_rate(s.pose, st.joints, g, in, jacobians);
    err = std::max(err, norm(acceleration_residual(pair, pair_dot, {}, in)));
  }
  return result("plan_acceleration_residual", err, 1e-8);
}

ValidationReport run_validation(const ValidationOptions& options) {
  std::mt19937_64 rng(options.seed);
  ValidationReport report;
  const auto add = [&report](auto&& fn) {
    try {
      report.results.push_back(fn());
    } catch (const std::exception& e) {
      report.results.push_back({"(exception)", INFINITY, 0.0, false, e.what()});
    }
  };
  add([&] { return check_euler_quaternion(rng); });
  add([&] { return check_euler_roundtrip(rng); });
  add([&] { return check_rotation_invariants(rng); });
  add([&] { return check_compose_associativity(rng); });
  add([&] { return check_homogeneous_product(rng); });
  add([&] { return check_tip_norm(rng); });
  add([&] { return check_fk_dual_path(rng); });
  add([&] { return check_fk_reference(rng); });
  add([&] { return check_ik_roundtrip(rng); });
  add([&] { return check_ik_mirror_roundtrip(rng); });
  add([&] { return check_newton_ik(); });
  add([&] { return check_jacobian_fd(rng, options.jacobian); });
  add([&] { return check_jacobian_rate(rng); });
  add([&] { return check_compensation_velocity(rng, options.jacobian); });
  add([&] { return check_profile_formulas(); });
  add([&] { return check_plan_tip_drift(); });
  add([&] { return check_plan_rk4_drift(); });
  add([&] { return check_plan_accel_residual(); });
  return report;
}

void print_report(std::ostream& out, const ValidationReport& report) {
  for (const auto& r : report.results) {
    out << fmt::format("[{}] {:<34} max error {:.3e} (tolerance {:.0e}){}{}\n",
                       r.pass ? "PASS" : "FAIL", r.name, r.max_error, r.tolerance,
                       r.detail.empty() ? "" : "  ", r.detail);
  }
  const auto passed = std::count_if(report.results.begin(), report.results.end(),
                                    [](const auto& r) { return r.pass; });
  out << fmt::format("{}/{} oracles passed\n", passed, report.results.size());
}

}  // namespace silsrob

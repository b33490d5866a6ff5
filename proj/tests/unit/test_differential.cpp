#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "silsrob/differential.hpp"
#include "silsrob/errors.hpp"
#include "silsrob/oracles.hpp"
#include "silsrob/trajectory.hpp"
#include "silsrob/validation.hpp"

using namespace silsrob;
using silsrob::test::check_close;

namespace {

const PlatformPose kP0{15, 20, -500, -15, 10, -60};
const Vec3 kTip{50, -50, -620};

// Platform pose and IK joints of the scenario reorientation at time t.
struct ScenarioState {
  PlatformPose pose;
  SphericalJoints joints;
  ProfileSample psi, theta;
};

ScenarioState scenario_at(double t) {
  const ProfileLimits lim{10, 5};
  const TrapezoidProfile pp = plan_profile(15, lim), tp = plan_profile(25, lim);
  ScenarioState s;
  s.psi = sample_stretched(pp, tp.t_total, t);
  s.theta = sample_profile(tp, t);
  s.pose = kP0;
  s.pose.psi += s.psi.pos;
  s.pose.theta += s.theta.pos;
  s.joints = ik_full(s.pose, kTip, {});
  return s;
}

}  // namespace

TEST_CASE("A is minus the identity") {
  const JacobianPair p = jacobians(kP0, ik_full(kP0, kTip, {}), {});
  check_close(p.a, Mat3{{-1, 0, 0, 0, -1, 0, 0, 0, -1}}, 0.0);
}

TEST_CASE("insertion column of B") {
  SphericalGeometry flat;
  flat.alpha = flat.beta = 0;
  check_close(jacobians({}, {0, 0, 0}, flat).b[kQ3], {0, 0, -1}, 0.0);

  const SphericalJoints j = ik_full(kP0, kTip, {});
  const Vec3 dir = (kTip - rcm_fixed(kP0, RcmPort::left())) / j.q3;
  check_close(jacobians(kP0, j, {}).b[kQ3], dir, 1e-12);
}

TEST_CASE("B matches central finite differences") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto c = sample_configuration(rng);
    const auto ref = oracles::fd_b_columns(c.pose, c.joints, c.geometry);
    CHECK(oracles::column_relative_error(jacobians(c.pose, c.joints, c.geometry).b, ref) <= 1e-6);
  }
}

TEST_CASE("Bdot matches extrapolated differences of B") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto c = sample_configuration(rng);
    InputRates r;
    r.q1_dot = 7;
    r.q2_dot = -3;
    r.q3_dot = 12;
    r.psi_dot = 4;
    r.theta_dot = -9;
    const auto ref = oracles::fd_b_rate(c.pose, c.joints, c.geometry, r, jacobians);
    const JacobianPair dot = jacobian_rate(c.pose, c.joints, c.geometry, r);
    CHECK(oracles::column_relative_error(dot.b, ref) <= 1e-6);
    check_close(dot.a, Mat3{}, 0.0);
  }
}

TEST_CASE("zero platform motion needs no compensation") {
  const JacobianPair p = jacobians(kP0, ik_full(kP0, kTip, {}), {});
  const JointRates r = compensation_rates(p, 0, 0);
  CHECK(r.q1_dot == 0.0);
  CHECK(r.q2_dot == 0.0);
  CHECK(r.q3_dot == 0.0);
  const JointAccels a = compensation_accels(p, jacobian_rate(kP0, ik_full(kP0, kTip, {}), {}, {}), {});
  CHECK(a.q1_ddot == 0.0);
  CHECK(a.q2_ddot == 0.0);
  CHECK(a.q3_ddot == 0.0);
}

TEST_CASE("compensation rates hold the tip still") {
  const SphericalJoints j = ik_full(kP0, kTip, {});
  const JacobianPair p = jacobians(kP0, j, {});
  const JointRates q = compensation_rates(p, 3.5, -7.25);
  InputRates in;
  in.q1_dot = q.q1_dot;
  in.q2_dot = q.q2_dot;
  in.q3_dot = q.q3_dot;
  in.psi_dot = 3.5;
  in.theta_dot = -7.25;
  CHECK(norm(velocity_residual(p, {}, in)) <= 1e-9);
}

TEST_CASE("compensation matches differences of the IK trajectory mid-move") {
  // Both profiles are in a constant-acceleration segment around t = 2.1 s.
  const double t = 2.1, h = 1e-4;
  const ScenarioState s = scenario_at(t), lo = scenario_at(t - h), hi = scenario_at(t + h);
  const JacobianPair p = jacobians(s.pose, s.joints, {});
  const JointRates q = compensation_rates(p, s.psi.vel, s.theta.vel);
  CHECK(std::fabs(q.q1_dot - (hi.joints.q1 - lo.joints.q1) / (2 * h)) <= 1e-6);
  CHECK(std::fabs(q.q2_dot - (hi.joints.q2 - lo.joints.q2) / (2 * h)) <= 1e-6);
  CHECK(std::fabs(q.q3_dot - (hi.joints.q3 - lo.joints.q3) / (2 * h)) <= 1e-6);

  InputRates in;
  in.q1_dot = q.q1_dot;
  in.q2_dot = q.q2_dot;
  in.q3_dot = q.q3_dot;
  in.psi_dot = s.psi.vel;
  in.theta_dot = s.theta.vel;
  in.psi_ddot = s.psi.acc;
  in.theta_ddot = s.theta.acc;
  const JointAccels a = compensation_accels(p, jacobian_rate(s.pose, s.joints, {}, in), in);
  const double h2 = 1e-3;
  const ScenarioState lo2 = scenario_at(t - h2), hi2 = scenario_at(t + h2);
  CHECK(std::fabs(a.q1_ddot - (hi2.joints.q1 - 2 * s.joints.q1 + lo2.joints.q1) / (h2 * h2)) <= 1e-4);
  CHECK(std::fabs(a.q2_ddot - (hi2.joints.q2 - 2 * s.joints.q2 + lo2.joints.q2) / (h2 * h2)) <= 1e-4);
  CHECK(std::fabs(a.q3_ddot - (hi2.joints.q3 - 2 * s.joints.q3 + lo2.joints.q3) / (h2 * h2)) <= 1e-4);
}

TEST_CASE("singularity measure") {
  SphericalGeometry g;
  g.q2_min = -180;
  g.q2_max = 180;
  const double m0 = singularity_measure(jacobians({}, {0, 0, 100}, g));
  CHECK(m0 > 0.5);
  CHECK(m0 == doctest::Approx(std::cos(deg2rad(10))).epsilon(1e-12));
  for (double q2 = -80; q2 <= 80; q2 += 20) {
    const double m = signed_singularity_measure(jacobians(kP0, {25, q2, 120}, g));
    CHECK(m == doctest::Approx(-std::cos(deg2rad(10)) * std::cos(deg2rad(q2))).epsilon(1e-12));
  }
  CHECK(singularity_measure(jacobians(kP0, {25, 90, 120}, g)) <= 1e-12);

  try {
    compensation_rates(jacobians(kP0, {25, 90, 120}, g), 1, 1);
    FAIL("expected SingularConfiguration");
  } catch (const KinematicsError& e) {
    CHECK(e.kind() == ErrorKind::SingularConfiguration);
  }
}

TEST_CASE("solve3") {
  const Mat3 a{{0, 2, 1, 1, 0, 0, 3, 1, 4}};
  const Vec3 x{1.5, -2, 0.25};
  check_close(solve3(a, a * x), x, 1e-14);
  CHECK_THROWS_AS(solve3(Mat3{}, {1, 1, 1}), KinematicsError);
}

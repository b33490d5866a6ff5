#include "silsrob/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "silsrob/errors.hpp"

namespace silsrob {
namespace {

constexpr double kMinReach = 1e-9;      // mm
constexpr double kReachSlack = 1e-12;   // relative, on the cone condition

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(fmt::format("{}: {}", field, what));
}

void check_travel(double value, double lo, double hi, const char* name, const char* unit) {
  if (!(value >= lo && value <= hi)) {
    throw KinematicsError(ErrorKind::JointLimit,
                          fmt::format("{} = {} {} outside [{}, {}]", name, value, unit, lo, hi));
  }
}

}  // namespace

SphericalGeometry SphericalGeometry::mirrored() const {
  SphericalGeometry m = *this;
  m.alpha = -alpha;
  m.port = port.mirrored();
  m.q2_min = -q2_max;
  m.q2_max = -q2_min;
  return m;
}

void check_geometry(const SphericalGeometry& g) {
  require(std::isfinite(g.alpha) && std::fabs(g.alpha) < 90.0, "alpha", "must satisfy |alpha| < 90");
  require(std::isfinite(g.beta) && g.beta >= 0.0 && g.beta < 90.0, "beta",
          "must satisfy 0 <= beta < 90");
  require(std::isfinite(g.radius) && g.radius > 0.0, "radius", "must be positive");
  require(g.port.side() != PortSide::Endoscope, "port", "instrument modules need a side port");
  require(g.q1_min < g.q1_max, "q1_limits", "min must be below max");
  require(g.q2_min < g.q2_max, "q2_limits", "min must be below max");
  require(g.q3_min >= 0.0, "q3_limits", "min must be non-negative");
  require(g.q3_max > g.q3_min, "q3_limits", "max must exceed min");
}

void check_joints(const SphericalJoints& j, const SphericalGeometry& g) {
  if (!std::isfinite(j.q1) || !std::isfinite(j.q2) || !std::isfinite(j.q3))
    throw KinematicsError(ErrorKind::DegenerateInput, "joint values must be finite");
  check_travel(j.q1, g.q1_min, g.q1_max, "q1", "deg");
  check_travel(j.q2, g.q2_min, g.q2_max, "q2", "deg");
  check_travel(j.q3, g.q3_min, g.q3_max, "q3", "mm");
}

Mat4 module_matrix(const SphericalJoints& j, const SphericalGeometry& g) {
  check_joints(j, g);
  Mat4 m = from_rotation(rot_y(deg2rad(g.alpha)));
  m = compose(m, from_rotation(rot_x(deg2rad(j.q1))));
  m = compose(m, from_rotation(rot_y(deg2rad(j.q2))));
  m = compose(m, from_rotation(rot_x(deg2rad(g.beta))));
  return compose(m, trans_z(-j.q3));
}

Vec3 tip_in_platform(const SphericalJoints& j, const SphericalGeometry& g) {
  return last_column(module_matrix(j, g));
}

Vec3 fk_tip_fixed(const PlatformPose& pose, const SphericalJoints& j, const SphericalGeometry& g) {
  const Mat4 mp = platform_matrix(pose);
  const Mat3& r = mp.rotation;
  const Vec3 tip = tip_in_platform(j, g);
  const Vec3& rcm = g.port.offset();
  const double px = tip.x + rcm.x;
  const double py = tip.y + rcm.y;
  const double pz = tip.z + rcm.z;
  return {px * r(0, 0) + py * r(0, 1) + pz * r(0, 2) + pose.x,
          px * r(1, 0) + py * r(1, 1) + pz * r(1, 2) + pose.y,
          px * r(2, 0) + py * r(2, 1) + pz * r(2, 2) + pose.z};
}

Vec3 fk_tip_fixed_chain(const PlatformPose& pose, const SphericalJoints& j,
                        const SphericalGeometry& g) {
  const Mat4 rcm_fix = compose(platform_matrix(pose), from_translation(g.port.offset()));
  return last_column(compose(rcm_fix, module_matrix(j, g)));
}

SphericalJoints ik_tip_platform(const Vec3& v, const SphericalGeometry& g, IkBranch branch) {
  if (!is_finite(v)) throw KinematicsError(ErrorKind::DegenerateInput, "tip must be finite");
  const double q3 = norm(v);
  if (q3 < kMinReach) {
    throw KinematicsError(ErrorKind::DegenerateInput,
                          "tip coincides with the RCM; the orientation joints are undefined");
  }

  // Unit tool axis, expressed after undoing the fixed Ry(alpha):
  //   w = Rx(q1) * Ry(q2) * (0, -sin(beta), cos(beta))
  const Vec3 w = rot_y(-deg2rad(g.alpha)) * (-v / q3);
  const double beta = deg2rad(g.beta);
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);

  // Rx(q1) leaves x alone, so w.x = cos(beta) * sin(q2).
  if (std::fabs(w.x) > cb * (1.0 + kReachSlack)) {
    throw KinematicsError(
        ErrorKind::Unreachable,
        fmt::format("tool axis is outside the reachable cone (|w_x| = {:.12f} > cos(beta) = {:.12f})",
                    std::fabs(w.x), cb));
  }
  const double s2 = std::clamp(w.x / cb, -1.0, 1.0);
  double q2 = std::asin(s2);
  if (branch == IkBranch::Mirror) {
    q2 = std::numbers::pi - q2;
    if (q2 > std::numbers::pi) q2 -= 2.0 * std::numbers::pi;
  }

  // q1 rotates (-sin(beta), cos(q2) cos(beta)) onto (w.y, w.z) in the y-z plane.
  const double ay = -sb;
  const double az = std::cos(q2) * cb;
  const double q1 = std::atan2(ay * w.z - az * w.y, ay * w.y + az * w.z);

  const SphericalJoints j{rad2deg(q1), rad2deg(q2), q3};
  check_joints(j, g);
  return j;
}

SphericalJoints ik_full(const PlatformPose& pose, const Vec3& tip_fixed, const SphericalGeometry& g,
                        IkBranch branch) {
  const Mat4 mp = platform_matrix(pose);
  const Vec3 v = mp.rotation.transposed() * (tip_fixed - mp.translation) - g.port.offset();
  return ik_tip_platform(v, g, branch);
}

IkBranch branch_of(const SphericalJoints& j) {
  return std::fabs(j.q2) <= 90.0 ? IkBranch::Principal : IkBranch::Mirror;
}

}  // namespace silsrob

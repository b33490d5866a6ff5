#include "silsrob/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace silsrob::oracles {
namespace {

SphericalGeometry unlimited(SphericalGeometry g) {
  g.q1_min = g.q2_min = -1e9;
  g.q1_max = g.q2_max = 1e9;
  g.q3_min = 0.0;
  g.q3_max = 1e9;
  return g;
}

// Q in degrees/mm, the public units.
using Coordinates = std::array<double, 5>;

Coordinates coordinates(const PlatformPose& pose, const SphericalJoints& j) {
  return {j.q1, j.q2, j.q3, pose.psi, pose.theta};
}

void unpack(const Coordinates& q, PlatformPose& pose, SphericalJoints& j) {
  j = {q[0], q[1], q[2]};
  pose.psi = q[3];
  pose.theta = q[4];
}

// Converts a derivative per public unit to per internal unit (rad or mm).
double per_internal_unit(int k) { return k == kQ3 ? 1.0 : 180.0 / std::numbers::pi; }

double det3(const std::array<Vec3, 3>& c) {
  return c[0].x * (c[1].y * c[2].z - c[2].y * c[1].z) -
         c[1].x * (c[0].y * c[2].z - c[2].y * c[0].z) +
         c[2].x * (c[0].y * c[1].z - c[1].y * c[0].z);
}

}  // namespace

Quaternion multiply(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion axis_angle(const Vec3& u, double angle) {
  const double s = std::sin(0.5 * angle);
  return {std::cos(0.5 * angle), s * u.x, s * u.y, s * u.z};
}

Mat3 to_matrix(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r;
  r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
         2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
  return r;
}

Mat3 quaternion_euler_xyz(double psi, double theta, double phi) {
  const Quaternion q = multiply(multiply(axis_angle({1, 0, 0}, psi), axis_angle({0, 1, 0}, theta)),
                                axis_angle({0, 0, 1}, phi));
  return to_matrix(q);
}

Array4 to_array(const Mat4& m) {
  Array4 a{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
  return a;
}

Array4 matmul(const Array4& a, const Array4& b) {
  Array4 p{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) p[r][c] += a[r][k] * b[k][c];
  return p;
}

Array4 rotation_array(const Mat3& r) {
  Array4 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = r(i, j);
  a[3][3] = 1.0;
  return a;
}

Array4 translation_array(const Vec3& t) {
  Array4 a{};
  for (int i = 0; i < 4; ++i) a[i][i] = 1.0;
  a[0][3] = t.x;
  a[1][3] = t.y;
  a[2][3] = t.z;
  return a;
}

Vec3 tip_fixed_reference(const PlatformPose& pose, const SphericalJoints& j,
                         const SphericalGeometry& g) {
  const auto rad = [](double deg) { return deg * std::numbers::pi / 180.0; };
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0};
  Array4 m = translation_array(pose.position());
  m = matmul(m, rotation_array(quaternion_euler_xyz(rad(pose.psi), rad(pose.theta), rad(pose.phi))));
  m = matmul(m, translation_array(g.port.offset()));
  m = matmul(m, rotation_array(to_matrix(axis_angle(ey, rad(g.alpha)))));
  m = matmul(m, rotation_array(to_matrix(axis_angle(ex, rad(j.q1)))));
  m = matmul(m, rotation_array(to_matrix(axis_angle(ey, rad(j.q2)))));
  m = matmul(m, rotation_array(to_matrix(axis_angle(ex, rad(g.beta)))));
  m = matmul(m, translation_array({0, 0, -j.q3}));
  return {m[0][3], m[1][3], m[2][3]};
}

std::array<Vec3, 5> fd_b_columns(const PlatformPose& pose, const SphericalJoints& j,
                                 const SphericalGeometry& g) {
  const SphericalGeometry free = unlimited(g);
  const Coordinates q0 = coordinates(pose, j);
  // B does not depend on the platform position; differencing about the
  // origin keeps the rounding of large fixed-frame coordinates out.
  PlatformPose centred = pose;
  centred.x = centred.y = centred.z = 0.0;
  std::array<Vec3, 5> cols;
  for (int k = 0; k < 5; ++k) {
    // Step of 1e-6 in internal units (rad or mm), scaled by the coordinate.
    const double unit = per_internal_unit(k);
    const double h = 1e-6 * std::max(1.0, std::fabs(q0[k] / unit)) * unit;
    Coordinates qp = q0, qm = q0;
    qp[k] += h;
    qm[k] -= h;
    PlatformPose pp = centred, pm = centred;
    SphericalJoints jp, jm;
    unpack(qp, pp, jp);
    unpack(qm, pm, jm);
    const Vec3 d = (fk_tip_fixed(pp, jp, free) - fk_tip_fixed(pm, jm, free)) / (2.0 * h);
    cols[k] = d * per_internal_unit(k);
  }
  return cols;
}

double column_relative_error(const std::array<Vec3, 5>& b, const std::array<Vec3, 5>& ref) {
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double scale = std::max(norm(ref[k]), 1e-300);
    worst = std::max(worst, norm(b[k] - ref[k]) / scale);
  }
  return worst;
}

std::array<Vec3, 5> fd_b_rate(const PlatformPose& pose, const SphericalJoints& j,
                              const SphericalGeometry& g, const InputRates& rates,
                              const JacobianFn& jacobian) {
  const SphericalGeometry free = unlimited(g);
  const Coordinates q0 = coordinates(pose, j);
  const Coordinates qdot{rates.q1_dot, rates.q2_dot, rates.q3_dot, rates.psi_dot, rates.theta_dot};
  double speed = 0.0;
  for (double v : qdot) speed = std::max(speed, std::fabs(v));
  const double h = 1e-3 / std::max(1.0, speed);

  const auto central = [&](double step) {
    std::array<Vec3, 5> d;
    Coordinates qp = q0, qm = q0;
    for (int k = 0; k < 5; ++k) {
      qp[k] += step * qdot[k];
      qm[k] -= step * qdot[k];
    }
    PlatformPose pp = pose, pm = pose;
    SphericalJoints jp, jm;
    unpack(qp, pp, jp);
    unpack(qm, pm, jm);
    const JacobianPair bp = jacobian(pp, jp, free);
    const JacobianPair bm = jacobian(pm, jm, free);
    for (int k = 0; k < 5; ++k) d[k] = (bp.b[k] - bm.b[k]) / (2.0 * step);
    return d;
  };

  const auto coarse = central(h);
  const auto fine = central(0.5 * h);
  std::array<Vec3, 5> out;
  for (int k = 0; k < 5; ++k) out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  return out;
}

bool newton_ik(const PlatformPose& pose, const Vec3& tip_fixed, const SphericalGeometry& g,
               SphericalJoints& joints, int max_iterations) {
  for (int it = 0; it < max_iterations; ++it) {
    const Vec3 r = tip_fixed_reference(pose, joints, g) - tip_fixed;
    if (norm(r) < 1e-11) return true;
    std::array<Vec3, 3> jac;
    const std::array<double, 3> q{joints.q1, joints.q2, joints.q3};
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6 * std::max(1.0, std::fabs(q[k]));
      auto qp = q, qm = q;
      qp[k] += h;
      qm[k] -= h;
      jac[k] = (tip_fixed_reference(pose, {qp[0], qp[1], qp[2]}, g) -
                tip_fixed_reference(pose, {qm[0], qm[1], qm[2]}, g)) /
               (2.0 * h);
    }
    // Cramer's rule for jac * dq = -r.
    const double d = det3(jac);
    if (d == 0.0 || !std::isfinite(d)) return false;
    std::array<double, 3> dq;
    for (int k = 0; k < 3; ++k) {
      auto cols = jac;
      cols[k] = -r;
      dq[k] = det3(cols) / d;
    }
    joints.q1 += dq[0];
    joints.q2 += dq[1];
    joints.q3 += dq[2];
  }
  return norm(tip_fixed_reference(pose, joints, g) - tip_fixed) < 1e-9;
}

}  // namespace silsrob::oracles

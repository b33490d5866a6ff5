#include "silsrob/differential.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <fmt/format.h>

#include "silsrob/errors.hpp"

namespace silsrob {
namespace {

// Step for the complex-step derivative. Any tiny value works: there is no
// subtractive cancellation.
constexpr double kComplexStep = 1e-20;

struct ChainInputs {
  double alpha = 0.0;  // rad
  double beta = 0.0;   // rad
  double phi = 0.0;    // rad
  Vec3 port{};
};

// Closed-form columns of B = df/dQ, Q = (q1, q2, q3, psi, theta) in rad/mm.
//
// With a0 the unit tool axis before Ry(alpha) (tip = q3 * Ry(alpha) * a0) and
// R = Rx(psi) Ry(theta) Rz(phi), the derivatives of the elementary rotations
// are d/dq Rx(q) = [e_x]x Rx(q) and d/dq Ry(q) = [e_y]x Ry(q), which gives
//
//   df/dq1    = q3 R Ry(alpha) (e_x x a0)
//   df/dq2    = q3 R Ry(alpha) Rx(q1) (e_y x a1),   a1 = Ry(q2) Rx(beta) (-e_z)
//   df/dq3    = R Ry(alpha) a0
//   df/dpsi   = e_x x (R p)
//   df/dtheta = (Rx(psi) e_y) x (R p),              p = tip + port
template <typename T>
std::array<BasicVec3<T>, 5> b_columns(const std::array<T, 5>& q, const ChainInputs& c) {
  using V = BasicVec3<T>;
  const V ex{T(1), T(0), T(0)};
  const V ey{T(0), T(1), T(0)};
  const V minus_ez{T(0), T(0), T(-1)};

  const auto r_alpha = rot_y(T(c.alpha));
  const auto r1 = rot_x(q[kQ1]);
  const V a1 = rot_y(q[kQ2]) * (rot_x(T(c.beta)) * minus_ez);
  const V a0 = r1 * a1;

  const auto rx_psi = rot_x(q[kPsi]);
  const auto r = rx_psi * rot_y(q[kTheta]) * rot_z(T(c.phi));
  const auto r_mod = r * r_alpha;

  const V axis = r_mod * a0;
  const V port{T(c.port.x), T(c.port.y), T(c.port.z)};
  const V p_fixed = r * (q[kQ3] * (r_alpha * a0) + port);

  std::array<V, 5> cols;
  cols[kQ1] = q[kQ3] * (r_mod * cross(ex, a0));
  cols[kQ2] = q[kQ3] * (r_mod * (r1 * cross(ey, a1)));
  cols[kQ3] = axis;
  cols[kPsi] = cross(ex, p_fixed);
  cols[kTheta] = cross(rx_psi * ey, p_fixed);
  return cols;
}

ChainInputs chain_inputs(const PlatformPose& pose, const SphericalGeometry& g) {
  return {deg2rad(g.alpha), deg2rad(g.beta), deg2rad(pose.phi), g.port.offset()};
}

std::array<double, 5> joint_vector(const PlatformPose& pose, const SphericalJoints& j) {
  return {deg2rad(j.q1), deg2rad(j.q2), j.q3, deg2rad(pose.psi), deg2rad(pose.theta)};
}

void require_nonsingular(const JacobianPair& pair) {
  const double m = singularity_measure(pair);
  if (!(m > kSingularityThreshold)) {
    throw KinematicsError(
        ErrorKind::SingularConfiguration,
        fmt::format("singular module configuration (normalized |det(B_q)| = {:.3e} <= {:.0e})", m,
                    kSingularityThreshold));
  }
}

}  // namespace

Vec3 solve3(const Mat3& a, const Vec3& rhs) {
  std::array<std::array<double, 4>, 3> m{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = a(r, c);
    m[r][3] = rhs[r];
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0)
      throw KinematicsError(ErrorKind::SingularConfiguration, "singular 3x3 system");
    std::swap(m[col], m[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Vec3 x;
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

JacobianPair jacobians(const PlatformPose& pose, const SphericalJoints& j,
                       const SphericalGeometry& g) {
  check_pose(pose);
  check_joints(j, g);
  JacobianPair pair;
  pair.a = Mat3{};
  pair.a(0, 0) = pair.a(1, 1) = pair.a(2, 2) = -1.0;
  pair.b = b_columns(joint_vector(pose, j), chain_inputs(pose, g));
  pair.characteristic_length = j.q3;
  return pair;
}

JacobianPair jacobian_rate(const PlatformPose& pose, const SphericalJoints& j,
                           const SphericalGeometry& g, const InputRates& rates) {
  check_pose(pose);
  check_joints(j, g);
  using C = std::complex<double>;
  const auto q = joint_vector(pose, j);
  const auto qdot = internal_units(rates);
  std::array<C, 5> q_perturbed;
  for (int k = 0; k < 5; ++k) q_perturbed[k] = C(q[k], kComplexStep * qdot[k]);
  const auto cols = b_columns(q_perturbed, chain_inputs(pose, g));

  JacobianPair dot;
  for (int k = 0; k < 5; ++k) {
    dot.b[k] = {cols[k].x.imag() / kComplexStep, cols[k].y.imag() / kComplexStep,
                cols[k].z.imag() / kComplexStep};
  }
  dot.characteristic_length = j.q3;
  return dot;
}

std::array<double, 5> internal_units(const InputRates& r, bool second) {
  if (second) {
    return {deg2rad(r.q1_ddot), deg2rad(r.q2_ddot), r.q3_ddot, deg2rad(r.psi_ddot),
            deg2rad(r.theta_ddot)};
  }
  return {deg2rad(r.q1_dot), deg2rad(r.q2_dot), r.q3_dot, deg2rad(r.psi_dot), deg2rad(r.theta_dot)};
}

Vec3 apply_b(const JacobianPair& pair, const std::array<double, 5>& v) {
  Vec3 out{};
  for (int k = 0; k < 5; ++k) out += v[k] * pair.b[k];
  return out;
}

JointRates compensation_rates(const JacobianPair& pair, double psi_dot, double theta_dot) {
  require_nonsingular(pair);
  const Vec3 rhs = -(deg2rad(psi_dot) * pair.b[kPsi] + deg2rad(theta_dot) * pair.b[kTheta]);
  const Vec3 x = solve3(pair.bq(), rhs);
  return {rad2deg(x.x), rad2deg(x.y), x.z};
}

JointAccels compensation_accels(const JacobianPair& pair, const JacobianPair& pair_dot,
                                const InputRates& rates) {
  require_nonsingular(pair);
  const auto qddot = internal_units(rates, true);
  const Vec3 rhs = -(apply_b(pair_dot, internal_units(rates)) + qddot[kPsi] * pair.b[kPsi] +
                     qddot[kTheta] * pair.b[kTheta]);
  const Vec3 x = solve3(pair.bq(), rhs);
  return {rad2deg(x.x), rad2deg(x.y), x.z};
}

double signed_singularity_measure(const JacobianPair& pair) {
  const double lc = pair.characteristic_length;
  if (!(lc > 0.0)) return 0.0;
  return determinant(Mat3::from_columns(pair.b[kQ1] / lc, pair.b[kQ2] / lc, pair.b[kQ3]));
}

double singularity_measure(const JacobianPair& pair) {
  return std::fabs(signed_singularity_measure(pair));
}

Vec3 velocity_residual(const JacobianPair& pair, const TaskRates& task, const InputRates& inputs) {
  return pair.a * task.tip_vel + apply_b(pair, internal_units(inputs));
}

Vec3 acceleration_residual(const JacobianPair& pair, const JacobianPair& pair_dot,
                           const TaskRates& task, const InputRates& inputs) {
  return pair.a * task.tip_acc + pair_dot.a * task.tip_vel +
         apply_b(pair, internal_units(inputs, true)) + apply_b(pair_dot, internal_units(inputs));
}

}  // namespace silsrob

#pragma once

// Velocity and acceleration relations of the instrument tip map.
//
// With f(Q) the fixed-frame tip position as a function of
// Q = (q1, q2, q3, psi, theta) and F(X, Q) = f(Q) - X = 0:
//
//   A * Xdot + B * Qdot = 0,                        A = -I, B = df/dQ
//   A * Xddot + Adot * Xdot + B * Qddot + Bdot * Qdot = 0
//
// X_P, Y_P, Z_P and phi are held constant. Inside a JacobianPair all angles
// are in radians (columns of B are mm/rad or mm/mm); the rate structs below
// use degrees like the rest of the public interface.

#include <array>

#include "silsrob/platform.hpp"
#include "silsrob/spherical.hpp"
#include "silsrob/transforms.hpp"

namespace silsrob {

/// Normalized |det(B_q)| below which a configuration is treated as singular.
inline constexpr double kSingularityThreshold = 1e-8;

enum JacobianColumn { kQ1 = 0, kQ2 = 1, kQ3 = 2, kPsi = 3, kTheta = 4 };

struct JacobianPair {
  Mat3 a = Mat3{};
  std::array<Vec3, 5> b{};
  /// Length used to make the angle columns of B_q commensurate (the q3 the
  /// pair was evaluated at).
  double characteristic_length = 0.0;

  /// First three columns of B (the module joints).
  Mat3 bq() const { return Mat3::from_columns(b[kQ1], b[kQ2], b[kQ3]); }
};

/// Tip velocity and acceleration in the fixed frame (mm/s, mm/s^2).
struct TaskRates {
  Vec3 tip_vel{};
  Vec3 tip_acc{};
};

/// First and second derivatives of Q. Angles in deg/s and deg/s^2, q3 in
/// mm/s and mm/s^2.
struct InputRates {
  double q1_dot = 0.0;
  double q2_dot = 0.0;
  double q3_dot = 0.0;
  double psi_dot = 0.0;
  double theta_dot = 0.0;
  double q1_ddot = 0.0;
  double q2_ddot = 0.0;
  double q3_ddot = 0.0;
  double psi_ddot = 0.0;
  double theta_ddot = 0.0;
};

struct JointRates {
  double q1_dot = 0.0;
  double q2_dot = 0.0;
  double q3_dot = 0.0;
};

struct JointAccels {
  double q1_ddot = 0.0;
  double q2_ddot = 0.0;
  double q3_ddot = 0.0;
};

/// A = -I and the closed-form B = df/dQ.
JacobianPair jacobians(const PlatformPose& pose, const SphericalJoints& j,
                       const SphericalGeometry& g);

/// Time derivative of the pair along the motion Qdot taken from `rates`.
/// Adot is zero; Bdot is the complex-step directional derivative of the
/// closed-form B, exact to rounding.
JacobianPair jacobian_rate(const PlatformPose& pose, const SphericalJoints& j,
                           const SphericalGeometry& g, const InputRates& rates);

/// Joint rates that hold the tip still while the platform turns at
/// (psi_dot, theta_dot) deg/s. Throws SingularConfiguration when
/// singularity_measure(pair) <= kSingularityThreshold.
JointRates compensation_rates(const JacobianPair& pair, double psi_dot, double theta_dot);

/// Joint accelerations for the fixed-tip constraint. Uses the joint and
/// platform rates and the platform accelerations from `rates`.
JointAccels compensation_accels(const JacobianPair& pair, const JacobianPair& pair_dot,
                                const InputRates& rates);

/// det(B_q) with the angle columns divided by the characteristic length.
/// Equals -cos(beta) * cos(q2); zero exactly when q2 = +-90 deg.
double signed_singularity_measure(const JacobianPair& pair);

/// |signed_singularity_measure(pair)|.
double singularity_measure(const JacobianPair& pair);

/// A * Xdot + B * Qdot.
Vec3 velocity_residual(const JacobianPair& pair, const TaskRates& task, const InputRates& inputs);

/// A * Xddot + Adot * Xdot + B * Qddot + Bdot * Qdot.
Vec3 acceleration_residual(const JacobianPair& pair, const JacobianPair& pair_dot,
                           const TaskRates& task, const InputRates& inputs);

/// B * v for a 5-vector v in internal units.
Vec3 apply_b(const JacobianPair& pair, const std::array<double, 5>& v);

/// Qdot (or Qddot when `second` is set) in internal units: rad and mm.
std::array<double, 5> internal_units(const InputRates& rates, bool second = false);

/// Solves a * x = rhs with partial pivoting. Throws SingularConfiguration on
/// an exactly singular pivot.
Vec3 solve3(const Mat3& a, const Vec3& rhs);

}  // namespace silsrob

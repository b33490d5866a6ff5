#pragma once

// Reference computations used to check the closed-form kinematics. Each one
// takes a route that does not share code with the routine it checks:
// quaternions for Euler matrices, plain 4x4 arrays for homogeneous products,
// Newton iteration for IK, and finite differences for derivatives.

#include <array>
#include <functional>

#include "silsrob/differential.hpp"
#include "silsrob/platform.hpp"
#include "silsrob/spherical.hpp"
#include "silsrob/transforms.hpp"

namespace silsrob::oracles {

using Array4 = std::array<std::array<double, 4>, 4>;

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

Quaternion multiply(const Quaternion& a, const Quaternion& b);
Quaternion axis_angle(const Vec3& unit_axis, double angle);
Mat3 to_matrix(const Quaternion& q);

/// qx(psi) * qy(theta) * qz(phi) as a rotation matrix.
Mat3 quaternion_euler_xyz(double psi, double theta, double phi);

Array4 to_array(const Mat4& m);
Array4 matmul(const Array4& a, const Array4& b);
Array4 rotation_array(const Mat3& r);
Array4 translation_array(const Vec3& t);

/// Tip of one module evaluated from scratch with 4x4 arrays and quaternion
/// rotations.
Vec3 tip_fixed_reference(const PlatformPose& pose, const SphericalJoints& j,
                         const SphericalGeometry& g);

using JacobianFn = std::function<JacobianPair(const PlatformPose&, const SphericalJoints&,
                                              const SphericalGeometry&)>;

/// Central differences of fk_tip_fixed over Q = (q1, q2, q3, psi, theta),
/// columns in mm/rad and mm/mm. Step 1e-6 rad or mm, scaled by max(1, |Q_k|).
std::array<Vec3, 5> fd_b_columns(const PlatformPose& pose, const SphericalJoints& j,
                                 const SphericalGeometry& g);

/// Largest column-relative difference max_k |b_k - ref_k| / max(|ref_k|, 1e-300).
double column_relative_error(const std::array<Vec3, 5>& b, const std::array<Vec3, 5>& ref);

/// d/dt of B along Qdot by Richardson-extrapolated central differences of
/// the supplied analytic Jacobian.
std::array<Vec3, 5> fd_b_rate(const PlatformPose& pose, const SphericalJoints& j,
                              const SphericalGeometry& g, const InputRates& rates,
                              const JacobianFn& jacobian);

/// Newton iteration on fk_tip_fixed with a finite-difference Jacobian.
/// Returns false if it does not converge.
bool newton_ik(const PlatformPose& pose, const Vec3& tip_fixed, const SphericalGeometry& g,
               SphericalJoints& joints, int max_iterations = 50);

}  // namespace silsrob::oracles

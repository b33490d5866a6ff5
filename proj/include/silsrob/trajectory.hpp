#pragma once

// Trapezoidal velocity profiles and the motion planners built on them.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "silsrob/differential.hpp"
#include "silsrob/platform.hpp"
#include "silsrob/spherical.hpp"

namespace silsrob {

/// Velocity and acceleration bounds (deg/s and deg/s^2 for angles, mm/s and
/// mm/s^2 for insertion).
struct ProfileLimits {
  double omega_max = 10.0;
  double eps_max = 5.0;
};

enum class ProfileShape { Null, Triangle, Trapezoid };

/// Rest-to-rest move of `delta` with constant acceleration, optional cruise
/// and constant deceleration.
struct TrapezoidProfile {
  double delta = 0.0;
  double t_acc = 0.0;
  double t_cruise = 0.0;
  double t_total = 0.0;
  double peak_rate = 0.0;  // signed like delta
  double accel = 0.0;      // signed like delta
  ProfileShape shape = ProfileShape::Null;
};

struct ProfileSample {
  double pos = 0.0;
  double vel = 0.0;
  double acc = 0.0;
};

/// Throws KinematicsError(InvalidLimits) unless both limits are positive and finite.
void check_limits(const ProfileLimits& lim);

TrapezoidProfile plan_profile(double delta, const ProfileLimits& lim);

/// Position, rate and acceleration at 0 <= t <= t_total. At a segment
/// boundary the later segment's acceleration is reported. Throws
/// KinematicsError(OutOfRange) outside the profile.
ProfileSample sample_profile(const TrapezoidProfile& p, double t);

/// Exact area under the rate curve.
double profile_integral(const TrapezoidProfile& p);

/// Samples `p` slowed down uniformly to last `duration` >= p.t_total.
ProfileSample sample_stretched(const TrapezoidProfile& p, double duration, double t);

enum class MotionType { Type1Reposition, Type2Insert, Type3Manipulate, Type4Reorient };

std::string_view to_string(MotionType type);

/// An instrument whose tip is held at a fixed-frame point.
struct Instrument {
  std::string name;
  SphericalGeometry geometry;
  Vec3 tip_fixed{};
};

/// Joint-space move of one instrument.
struct JointMove {
  std::string name;
  SphericalGeometry geometry;
  SphericalJoints start;
  SphericalJoints target;
};

struct InstrumentState {
  SphericalJoints joints;
  JointRates rates;
  JointAccels accels;
  Vec3 tip_fixed{};
  double singularity = 0.0;
};

struct PlatformRates {
  double psi_dot = 0.0;
  double theta_dot = 0.0;
  double psi_ddot = 0.0;
  double theta_ddot = 0.0;
};

struct PlanSample {
  double t = 0.0;
  PlatformPose pose;
  PlatformRates pose_rates;
  std::vector<InstrumentState> instruments;

  /// Smallest singularity measure over the instruments (0 when there are none).
  double singularity() const;
};

struct MotionPlan {
  MotionType type = MotionType::Type4Reorient;
  /// Grid spacing actually used: the requested dt shrunk so that the
  /// duration is a whole number of steps.
  double dt = 0.0;
  IkBranch branch = IkBranch::Principal;
  std::vector<std::string> instrument_names;
  std::vector<PlanSample> samples;

  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
};

/// Uniform grid over [0, duration] with endpoints included.
std::vector<double> time_grid(double duration, double dt);

/// Endoscope reorientation by (d_psi, d_theta) with compensating joint
/// motion that keeps every instrument tip fixed. Both axes run together and
/// finish together; the shorter move is stretched to the longer duration.
/// Position and phi stay at their start values.
///
/// Joints come from closed-form IK at every sample; rates and accelerations
/// from the velocity and acceleration relations. Any KinematicsError is
/// rethrown tagged with the sample time.
MotionPlan plan_type4(const PlatformPose& start, double d_psi, double d_theta,
                      const ProfileLimits& lim, double dt, std::span<const Instrument> instruments,
                      IkBranch branch = IkBranch::Principal);

/// Straight insertion/retraction: only q3 moves.
MotionPlan plan_type2_insert(const PlatformPose& pose, std::span<const JointMove> moves,
                             const ProfileLimits& linear, double dt);

/// Independent joint-space manipulation of the instrument modules with the
/// platform at rest. All joints finish together.
MotionPlan plan_type3_manipulate(const PlatformPose& pose, std::span<const JointMove> moves,
                                 const ProfileLimits& angular, const ProfileLimits& linear,
                                 double dt);

struct JointTrajectory {
  std::vector<double> t;
  std::vector<SphericalJoints> joints;
};

/// The type-4 reorientation with joints obtained by classic RK4 integration
/// of compensation_rates instead of per-sample IK. Used to cross-check the
/// velocity relation.
JointTrajectory integrate_compensation(const PlatformPose& start, double d_psi, double d_theta,
                                       const ProfileLimits& lim, double dt,
                                       const SphericalGeometry& geometry,
                                       const SphericalJoints& start_joints);

}  // namespace silsrob

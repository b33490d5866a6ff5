#include "silsrob/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <fmt/format.h>

#include "silsrob/errors.hpp"

namespace silsrob {
namespace {

constexpr std::size_t kMaxSamples = 10'000'000;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Guards a sequence of samples against reaching or crossing a singular
// configuration (sign change of the normalized det(B_q)).
class SingularityMonitor {
 public:
  void check(const JacobianPair& pair) {
    const double s = signed_singularity_measure(pair);
    if (std::fabs(s) <= kSingularityThreshold) {
      throw KinematicsError(ErrorKind::SingularConfiguration,
                            fmt::format("normalized |det(B_q)| = {:.3e} reached the threshold {:.0e}",
                                        std::fabs(s), kSingularityThreshold));
    }
    if (previous_ && (*previous_ > 0.0) != (s > 0.0)) {
      throw KinematicsError(ErrorKind::SingularConfiguration,
                            fmt::format("det(B_q) changed sign ({:.3e} -> {:.3e}); the motion "
                                        "passes through a singular configuration",
                                        *previous_, s));
    }
    previous_ = s;
  }

  void reset() { previous_.reset(); }

 private:
  std::optional<double> previous_;
};

MotionPlan plan_joint_space(MotionType type, const PlatformPose& pose,
                            std::span<const JointMove> moves, const ProfileLimits& angular,
                            const ProfileLimits& linear, double dt) {
  check_pose(pose);
  check_limits(angular);
  check_limits(linear);

  std::vector<std::array<TrapezoidProfile, 3>> profiles;
  double duration = 0.0;
  for (const JointMove& m : moves) {
    check_geometry(m.geometry);
    check_joints(m.start, m.geometry);
    check_joints(m.target, m.geometry);
    auto& p = profiles.emplace_back();
    p[0] = plan_profile(m.target.q1 - m.start.q1, angular);
    p[1] = plan_profile(m.target.q2 - m.start.q2, angular);
    p[2] = plan_profile(m.target.q3 - m.start.q3, linear);
    for (const auto& axis : p) duration = std::max(duration, axis.t_total);
  }

  MotionPlan plan;
  plan.type = type;
  for (const JointMove& m : moves) plan.instrument_names.push_back(m.name);
  const std::vector<double> grid = time_grid(duration, dt);
  plan.dt = grid.size() > 1 ? duration / static_cast<double>(grid.size() - 1) : dt;
  plan.samples.reserve(grid.size());

  std::vector<SingularityMonitor> monitors(moves.size());
  for (double t : grid) {
    PlanSample sample{t, pose, {}, {}};
    try {
      for (std::size_t i = 0; i < moves.size(); ++i) {
        const JointMove& m = moves[i];
        const ProfileSample s1 = sample_stretched(profiles[i][0], duration, t);
        const ProfileSample s2 = sample_stretched(profiles[i][1], duration, t);
        const ProfileSample s3 = sample_stretched(profiles[i][2], duration, t);
        InstrumentState st;
        st.joints = {m.start.q1 + s1.pos, m.start.q2 + s2.pos, m.start.q3 + s3.pos};
        if (t == duration) st.joints = m.target;
        st.rates = {s1.vel, s2.vel, s3.vel};
        st.accels = {s1.acc, s2.acc, s3.acc};
        const JacobianPair pair = jacobians(pose, st.joints, m.geometry);
        st.singularity = singularity_measure(pair);
        // With the tool retracted to the RCM the orientation joints do not
        // move the tip; insertion may legitimately start or end there.
        if (st.joints.q3 > 0.0) {
          monitors[i].check(pair);
        } else {
          monitors[i].reset();
        }
        st.tip_fixed = fk_tip_fixed(pose, st.joints, m.geometry);
        sample.instruments.push_back(st);
      }
    } catch (const KinematicsError& e) {
      throw e.at_time(t);
    }
    plan.samples.push_back(std::move(sample));
  }
  return plan;
}

}  // namespace

void check_limits(const ProfileLimits& lim) {
  if (!(std::isfinite(lim.omega_max) && lim.omega_max > 0.0))
    throw KinematicsError(ErrorKind::InvalidLimits, "omega_max must be positive");
  if (!(std::isfinite(lim.eps_max) && lim.eps_max > 0.0))
    throw KinematicsError(ErrorKind::InvalidLimits, "eps_max must be positive");
}

TrapezoidProfile plan_profile(double delta, const ProfileLimits& lim) {
  check_limits(lim);
  if (!std::isfinite(delta)) throw KinematicsError(ErrorKind::DegenerateInput, "delta must be finite");

  TrapezoidProfile p;
  p.delta = delta;
  if (delta == 0.0) return p;

  const double dist = std::fabs(delta);
  const double sgn = sign_of(delta);
  const double w = lim.omega_max;
  const double e = lim.eps_max;
  p.accel = sgn * e;
  if (dist < w * w / e) {
    p.shape = ProfileShape::Triangle;
    p.t_acc = std::sqrt(dist / e);
    p.t_cruise = 0.0;
    p.peak_rate = sgn * std::sqrt(dist * e);
  } else {
    p.shape = ProfileShape::Trapezoid;
    p.t_acc = w / e;
    p.t_cruise = dist / w - w / e;
    p.peak_rate = sgn * w;
  }
  p.t_total = 2.0 * p.t_acc + p.t_cruise;
  return p;
}

ProfileSample sample_profile(const TrapezoidProfile& p, double t) {
  if (!(t >= 0.0 && t <= p.t_total)) {
    throw KinematicsError(ErrorKind::OutOfRange,
                          fmt::format("t = {} s outside the profile [0, {}]", t, p.t_total));
  }
  if (p.shape == ProfileShape::Null) return {};

  const double a = p.accel;
  if (t < p.t_acc) return {0.5 * a * t * t, a * t, a};
  if (t < p.t_acc + p.t_cruise) {
    return {0.5 * a * p.t_acc * p.t_acc + p.peak_rate * (t - p.t_acc), p.peak_rate, 0.0};
  }
  const double r = p.t_total - t;
  return {p.delta - 0.5 * a * r * r, a * r, -a};
}

double profile_integral(const TrapezoidProfile& p) {
  return p.peak_rate * (p.t_acc + p.t_cruise);
}

ProfileSample sample_stretched(const TrapezoidProfile& p, double duration, double t) {
  if (p.shape == ProfileShape::Null) {
    if (!(t >= 0.0 && t <= duration))
      throw KinematicsError(ErrorKind::OutOfRange, fmt::format("t = {} s outside the plan", t));
    return {};
  }
  if (duration == p.t_total) return sample_profile(p, t);
  if (!(t >= 0.0 && t <= duration))
    throw KinematicsError(ErrorKind::OutOfRange, fmt::format("t = {} s outside the plan", t));
  const double k = p.t_total / duration;
  const double tau = std::min(t * k, p.t_total);
  const ProfileSample s = sample_profile(p, tau);
  return {s.pos, s.vel * k, s.acc * k * k};
}

std::string_view to_string(MotionType type) {
  switch (type) {
    case MotionType::Type1Reposition:
      return "type1";
    case MotionType::Type2Insert:
      return "type2";
    case MotionType::Type3Manipulate:
      return "type3";
    case MotionType::Type4Reorient:
      return "type4";
  }
  return "unknown";
}

double PlanSample::singularity() const {
  if (instruments.empty()) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : instruments) m = std::min(m, s.singularity);
  return m;
}

std::vector<double> time_grid(double duration, double dt) {
  if (!(std::isfinite(dt) && dt > 0.0))
    throw KinematicsError(ErrorKind::InvalidLimits, "dt must be positive");
  if (duration == 0.0) return {0.0};
  const double steps = std::ceil(duration / dt - 1e-9);
  if (!(steps < static_cast<double>(kMaxSamples)))
    throw KinematicsError(ErrorKind::InvalidLimits, "dt is too small for the plan duration");
  const auto n = static_cast<std::size_t>(std::max(1.0, steps));
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k < n; ++k)
    grid[k] = duration * static_cast<double>(k) / static_cast<double>(n);
  grid[n] = duration;
  return grid;
}

MotionPlan plan_type4(const PlatformPose& start, double d_psi, double d_theta,
                      const ProfileLimits& lim, double dt, std::span<const Instrument> instruments,
                      IkBranch branch) {
  check_pose(start);
  for (const Instrument& ins : instruments) check_geometry(ins.geometry);
  const TrapezoidProfile psi_profile = plan_profile(d_psi, lim);
  const TrapezoidProfile theta_profile = plan_profile(d_theta, lim);
  const double duration = std::max(psi_profile.t_total, theta_profile.t_total);

  MotionPlan plan;
  plan.type = MotionType::Type4Reorient;
  plan.branch = branch;
  for (const Instrument& ins : instruments) plan.instrument_names.push_back(ins.name);
  const std::vector<double> grid = time_grid(duration, dt);
  plan.dt = grid.size() > 1 ? duration / static_cast<double>(grid.size() - 1) : dt;
  plan.samples.reserve(grid.size());

  std::vector<SingularityMonitor> monitors(instruments.size());
  for (double t : grid) {
    const ProfileSample sp = sample_stretched(psi_profile, duration, t);
    const ProfileSample st = sample_stretched(theta_profile, duration, t);
    PlanSample sample;
    sample.t = t;
    sample.pose = start;
    sample.pose.psi = start.psi + sp.pos;
    sample.pose.theta = start.theta + st.pos;
    sample.pose_rates = {sp.vel, st.vel, sp.acc, st.acc};
    try {
      check_pose(sample.pose);
      for (std::size_t i = 0; i < instruments.size(); ++i) {
        const Instrument& ins = instruments[i];
        InstrumentState s;
        s.joints = ik_full(sample.pose, ins.tip_fixed, ins.geometry, branch);
        const JacobianPair pair = jacobians(sample.pose, s.joints, ins.geometry);
        monitors[i].check(pair);
        s.singularity = singularity_measure(pair);
        s.rates = compensation_rates(pair, sp.vel, st.vel);

        InputRates r;
        r.q1_dot = s.rates.q1_dot;
        r.q2_dot = s.rates.q2_dot;
        r.q3_dot = s.rates.q3_dot;
        r.psi_dot = sp.vel;
        r.theta_dot = st.vel;
        r.psi_ddot = sp.acc;
        r.theta_ddot = st.acc;
        const JacobianPair pair_dot = jacobian_rate(sample.pose, s.joints, ins.geometry, r);
        s.accels = compensation_accels(pair, pair_dot, r);
        s.tip_fixed = fk_tip_fixed(sample.pose, s.joints, ins.geometry);
        sample.instruments.push_back(s);
      }
    } catch (const KinematicsError& e) {
      throw e.at_time(t);
    }
    plan.samples.push_back(std::move(sample));
  }
  return plan;
}

MotionPlan plan_type2_insert(const PlatformPose& pose, std::span<const JointMove> moves,
                             const ProfileLimits& linear, double dt) {
  for (const JointMove& m : moves) {
    if (m.target.q1 != m.start.q1 || m.target.q2 != m.start.q2)
      throw std::invalid_argument(fmt::format("{}: insertion moves may only change q3", m.name));
  }
  // The angular limits are irrelevant here: q1 and q2 do not move.
  return plan_joint_space(MotionType::Type2Insert, pose, moves, linear, linear, dt);
}

MotionPlan plan_type3_manipulate(const PlatformPose& pose, std::span<const JointMove> moves,
                                 const ProfileLimits& angular, const ProfileLimits& linear,
                                 double dt) {
  return plan_joint_space(MotionType::Type3Manipulate, pose, moves, angular, linear, dt);
}

JointTrajectory integrate_compensation(const PlatformPose& start, double d_psi, double d_theta,
                                       const ProfileLimits& lim, double dt,
                                       const SphericalGeometry& geometry,
                                       const SphericalJoints& start_joints) {
  check_pose(start);
  check_geometry(geometry);
  const TrapezoidProfile psi_profile = plan_profile(d_psi, lim);
  const TrapezoidProfile theta_profile = plan_profile(d_theta, lim);
  const double duration = std::max(psi_profile.t_total, theta_profile.t_total);

  using State = std::array<double, 3>;
  auto rhs = [&](const State& q, State& dq, double t) {
    const double tc = std::clamp(t, 0.0, duration);
    const ProfileSample sp = sample_stretched(psi_profile, duration, tc);
    const ProfileSample st = sample_stretched(theta_profile, duration, tc);
    PlatformPose pose = start;
    pose.psi = start.psi + sp.pos;
    pose.theta = start.theta + st.pos;
    const SphericalJoints j{q[0], q[1], q[2]};
    const JointRates r = compensation_rates(jacobians(pose, j, geometry), sp.vel, st.vel);
    dq = {r.q1_dot, r.q2_dot, r.q3_dot};
  };

  JointTrajectory out;
  out.t = time_grid(duration, dt);
  out.joints.reserve(out.t.size());
  State q{start_joints.q1, start_joints.q2, start_joints.q3};
  out.joints.push_back(start_joints);
  boost::numeric::odeint::runge_kutta4<State> stepper;
  for (std::size_t k = 1; k < out.t.size(); ++k) {
    const double t0 = out.t[k - 1];
    try {
      stepper.do_step(rhs, q, t0, out.t[k] - t0);
    } catch (const KinematicsError& e) {
      throw e.at_time(t0);
    }
    out.joints.push_back({q[0], q[1], q[2]});
  }
  return out;
}

}  // namespace silsrob

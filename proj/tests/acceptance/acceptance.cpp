// One line per acceptance criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "silsrob/simulation.hpp"
#include "silsrob/validation.hpp"

using namespace silsrob;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << fmt::format("[{}] AC{} {}: {}\n", pass ? "PASS" : "FAIL", id, title, detail);
}

template <typename F>
void criterion(int id, const std::string& title, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, title, false, fmt::format("exception: {}", e.what()));
  }
}

std::string render(const Scenario& s) {
  std::ostringstream out, err;
  if (run_scenario(s, {}, out, err) != kExitOk) throw std::runtime_error(err.str());
  return out.str();
}

}  // namespace

int main() {
  const Scenario scenario = reference_scenario();

  criterion(1, "reference scenario execution", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const MotionPlan plan = plan_scenario(scenario);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const PlatformPose& end = plan.samples.back().pose;
    const bool pass = std::fabs(plan.duration() - 4.5) <= 1e-12 && std::fabs(end.psi) <= 1e-12 &&
                      std::fabs(end.theta - 35.0) <= 1e-12 && elapsed < 1.0;
    report(1, "reference scenario execution", pass,
           fmt::format("duration {:.12f} s, end psi {:.3e} deg, end theta {:.12f} deg, runtime {:.4f} s",
                       plan.duration(), end.psi, end.theta, elapsed));
  });

  criterion(2, "tip preservation", [&] {
    const OracleResult ik = check_plan_tip_drift();
    const OracleResult rk4 = check_plan_rk4_drift();
    report(2, "tip preservation", ik.max_error <= 1e-9 && rk4.max_error <= 1e-3,
           fmt::format("IK path {:.3e} mm (<= 1e-9), RK4 at dt = 1 ms {:.3e} mm (<= 1e-3)",
                       ik.max_error, rk4.max_error));
  });

  std::mt19937_64 rng(20240611);

  criterion(3, "FK/IK round trip", [&] {
    const OracleResult r = check_ik_roundtrip(rng, 10000);
    report(3, "FK/IK round trip", r.pass && r.max_error <= 1e-9,
           fmt::format("10000 configurations, max error {:.3e} mm (<= 1e-9), {}", r.max_error, r.detail));
  });

  criterion(4, "Jacobian oracle", [&] {
    const OracleResult r = check_jacobian_fd(rng, jacobians, 1000);
    report(4, "Jacobian oracle", r.max_error <= 1e-6,
           fmt::format("1000 configurations, max column-relative error {:.3e} (<= 1e-6)", r.max_error));
  });

  criterion(5, "acceleration residual", [&] {
    const OracleResult r = check_plan_accel_residual();
    report(5, "acceleration residual", r.max_error <= 1e-8,
           fmt::format("max residual {:.3e} mm/s^2 over every sample (<= 1e-8)", r.max_error));
  });

  criterion(6, "dual-path FK equivalence", [&] {
    const OracleResult r = check_fk_dual_path(rng, 10000);
    report(6, "dual-path FK equivalence", r.max_error <= 1e-12,
           fmt::format("10000 inputs, max difference {:.3e} mm (<= 1e-12)", r.max_error));
  });

  criterion(7, "profile arithmetic", [&] {
    const TrapezoidProfile trap = plan_profile(25, scenario.angular);
    const TrapezoidProfile tri = plan_profile(15, scenario.angular);
    const double e1 = std::fabs(trap.t_total - 4.5);
    const double e2 = std::fabs(tri.peak_rate - std::sqrt(75.0));
    report(7, "profile arithmetic", e1 <= 1e-12 && e2 <= 1e-12,
           fmt::format("t_total(25) = {:.15f} s, peak(15) = {:.15f} deg/s, errors {:.1e} / {:.1e} (<= 1e-12)",
                       trap.t_total, tri.peak_rate, e1, e2));
  });

  criterion(8, "singularity guard", [&] {
    SphericalGeometry g = SphericalGeometry::left_default();
    g.q2_min = -180;
    g.q2_max = 180;
    const JointMove through{"left", g, {0, 0, 100}, {0, 120, 100}};
    const PlatformPose pose = scenario.start;
    // Time at which q2 reaches 90 deg on the unguarded profile.
    const TrapezoidProfile p = plan_profile(120, scenario.angular);
    double t_cross = 0.0;
    for (double t : time_grid(p.t_total, 1e-4))
      if (sample_profile(p, t).pos < 90.0) t_cross = t;
    try {
      plan_type3_manipulate(pose, {&through, 1}, scenario.angular, scenario.linear, scenario.dt);
      report(8, "singularity guard", false, "plan through q2 = 90 deg was accepted");
    } catch (const KinematicsError& e) {
      const bool singular = e.kind() == ErrorKind::SingularConfiguration;
      const double t_abort = e.sample_time().value_or(-1.0);
      // Smallest measure among the samples accepted before the abort.
      double min_accepted = INFINITY;
      for (double t : time_grid(p.t_total, scenario.dt)) {
        if (t >= t_abort) break;
        const SphericalJoints j{0, sample_profile(p, t).pos, 100};
        min_accepted = std::min(min_accepted, singularity_measure(jacobians(pose, j, g)));
      }
      report(8, "singularity guard", singular && t_abort > 0.0 && min_accepted >= 1e-8,
             fmt::format("{} at t = {:.3f} s (q2 = 90 deg at t = {:.4f} s), smallest accepted measure {:.3e}",
                         to_string(e.kind()), t_abort, t_cross, min_accepted));
    }
  });

  criterion(9, "determinism", [&] {
    const std::string a = render(scenario), b = render(scenario);
    report(9, "determinism", a == b && !a.empty(),
           fmt::format("two runs, {} bytes each, identical: {}", a.size(), a == b ? "yes" : "no"));
  });

  std::cout << fmt::format("{} of 9 acceptance criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}

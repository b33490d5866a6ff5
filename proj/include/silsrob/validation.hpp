#pragma once

// Self-check suite behind `silsrob validate`: every closed-form routine is
// compared against an independent oracle on sampled inputs.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "silsrob/oracles.hpp"
#include "silsrob/scenario.hpp"

namespace silsrob {

struct OracleResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<OracleResult> results;
  bool all_passed() const;
};

struct ValidationOptions {
  /// Jacobian under test; replaceable for fault injection.
  oracles::JacobianFn jacobian = jacobians;
  std::uint64_t seed = 0x5115'0b'2024ULL;
};

/// A random valid configuration of one module on a random platform pose.
struct SampledConfiguration {
  PlatformPose pose;
  SphericalGeometry geometry;
  SphericalJoints joints;
};

SampledConfiguration sample_configuration(std::mt19937_64& rng);

/// The reorientation scenario used throughout the checks: start pose
/// (15, 20, -500, -15, 10, -60), left tip (50, -50, -620), deltas (15, 25) deg,
/// limits 10 deg/s and 5 deg/s^2, default geometry.
Scenario reference_scenario();

OracleResult check_euler_quaternion(std::mt19937_64& rng, int samples = 1000);
OracleResult check_euler_roundtrip(std::mt19937_64& rng, int samples = 1000);
OracleResult check_rotation_invariants(std::mt19937_64& rng, int samples = 100);
OracleResult check_compose_associativity(std::mt19937_64& rng, int samples = 1000);
OracleResult check_homogeneous_product(std::mt19937_64& rng, int samples = 1000);
OracleResult check_tip_norm(std::mt19937_64& rng, int samples = 1000);
OracleResult check_fk_dual_path(std::mt19937_64& rng, int samples = 10000);
OracleResult check_fk_reference(std::mt19937_64& rng, int samples = 10000);
OracleResult check_ik_roundtrip(std::mt19937_64& rng, int samples = 10000);
OracleResult check_ik_mirror_roundtrip(std::mt19937_64& rng, int samples = 2000);
OracleResult check_newton_ik();
OracleResult check_jacobian_fd(std::mt19937_64& rng, const oracles::JacobianFn& jacobian,
                               int samples = 1000);
OracleResult check_jacobian_rate(std::mt19937_64& rng, int samples = 200);
OracleResult check_compensation_velocity(std::mt19937_64& rng, const oracles::JacobianFn& jacobian,
                                         int samples = 1000);
OracleResult check_profile_formulas();
OracleResult check_plan_tip_drift();
OracleResult check_plan_rk4_drift();
OracleResult check_plan_accel_residual();

ValidationReport run_validation(const ValidationOptions& options = {});

void print_report(std::ostream& out, const ValidationReport& report);

}  // namespace silsrob

#include <cmath>
#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "silsrob/oracles.hpp"
#include "silsrob/validation.hpp"

using namespace silsrob;
using silsrob::test::check_close;

TEST_CASE("quaternion rotation matches elementary rotations") {
  check_close(oracles::to_matrix(oracles::axis_angle({1, 0, 0}, 0.4)), rot_x(0.4), 1e-15);
  check_close(oracles::to_matrix(oracles::axis_angle({0, 1, 0}, -1.1)), rot_y(-1.1), 1e-15);
  check_close(oracles::to_matrix(oracles::axis_angle({0, 0, 1}, 2.9)), rot_z(2.9), 1e-15);
}

TEST_CASE("fresh build passes every oracle") {
  const ValidationReport r = run_validation();
  for (const auto& o : r.results) {
    INFO(o.name, " error ", o.max_error, " tolerance ", o.tolerance, " ", o.detail);
    CHECK(o.pass);
  }
  CHECK(r.results.size() == 18);
  CHECK(r.all_passed());
}

TEST_CASE("a perturbed Jacobian term fails the finite-difference oracle") {
  const oracles::JacobianFn faulty = [](const PlatformPose& p, const SphericalJoints& j,
                                        const SphericalGeometry& g) {
    JacobianPair pair = jacobians(p, j, g);
    pair.b[kQ2].y += 1e-3;
    return pair;
  };
  std::mt19937_64 rng(1);
  const OracleResult fd = check_jacobian_fd(rng, faulty, 100);
  CHECK_FALSE(fd.pass);
  CHECK(fd.max_error > 1e-6);

  ValidationOptions opt;
  opt.jacobian = faulty;
  const ValidationReport r = run_validation(opt);
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("validation is deterministic for a seed") {
  std::mt19937_64 a(99), b(99);
  CHECK(check_ik_roundtrip(a, 100).max_error == check_ik_roundtrip(b, 100).max_error);
}

TEST_CASE("sampled configurations are valid") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto c = sample_configuration(rng);
    CHECK_NOTHROW(check_geometry(c.geometry));
    CHECK_NOTHROW(check_joints(c.joints, c.geometry));
    CHECK_NOTHROW(check_pose(c.pose));
  }
}

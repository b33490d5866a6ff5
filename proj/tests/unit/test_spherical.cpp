#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "helpers.hpp"
#include "silsrob/errors.hpp"
#include "silsrob/oracles.hpp"
#include "silsrob/spherical.hpp"

using namespace silsrob;
using silsrob::test::check_close;

namespace {

const PlatformPose kP0{15, 20, -500, -15, 10, -60};
const Vec3 kTip{50, -50, -620};

SphericalGeometry flat() {
  SphericalGeometry g;
  g.alpha = 0;
  g.beta = 0;
  return g;
}

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const KinematicsError& e) {
    return e.kind();
  }
  FAIL("no KinematicsError thrown");
  return ErrorKind::OutOfRange;
}

}  // namespace

TEST_CASE("module chain with zero offsets is a pure insertion") {
  const Mat4 m = module_matrix({0, 0, 100}, flat());
  check_close(m.translation, {0, 0, -100}, 0.0);
  check_close(m.rotation, Mat3::identity(), 0.0);
}

TEST_CASE("module chain with the default offsets") {
  // mpmath, 40 digits
  const Vec3 expected{-17.101007166283436652, 17.364817766693034885, -96.984631039295419203};
  check_close(module_matrix({0, 0, 100}, {}).translation, expected, 1e-12);
  check_close(tip_in_platform({0, 0, 100}, {}), expected, 1e-12);
  const double s = std::sin(deg2rad(10)), c = std::cos(deg2rad(10));
  check_close(expected, {-100 * s * c, 100 * s, -100 * c * c}, 1e-12);
}

TEST_CASE("zero insertion leaves the tip at the remote centre") {
  for (double q1 : {-80.0, 0.0, 35.0})
    for (double q2 : {-60.0, 10.0, 89.0}) check_close(tip_in_platform({q1, q2, 0}, {}), {}, 0.0);
}

TEST_CASE("tip distance from the port equals the insertion") {
  for (double q1 = -90; q1 <= 90; q1 += 15)
    for (double q2 = -90; q2 <= 90; q2 += 15)
      CHECK(norm(tip_in_platform({q1, q2, 137.5}, {})) == doctest::Approx(137.5).epsilon(1e-14));
}

TEST_CASE("fixed-frame tip") {
  check_close(fk_tip_fixed({}, {0, 0, 100}, flat()), {-10, 0, -100}, 0.0);
  const SphericalJoints j = ik_full(kP0, kTip, {});
  check_close(fk_tip_fixed(kP0, j, {}), kTip, 1e-9);
  check_close(fk_tip_fixed_chain(kP0, j, {}), kTip, 1e-9);
  check_close(oracles::tip_fixed_reference(kP0, j, {}), kTip, 1e-9);
}

TEST_CASE("closed-form IK examples") {
  const SphericalJoints z = ik_tip_platform({0, 0, -100}, flat());
  check_close(Vec3{z.q1, z.q2, z.q3}, {0, 0, 100}, 1e-12);
  const SphericalJoints j = ik_tip_platform(
      {-17.101007166283436652, 17.364817766693034885, -96.984631039295419203}, {});
  CHECK(std::fabs(j.q1) < 1e-12);
  CHECK(std::fabs(j.q2) < 1e-12);
  CHECK(j.q3 == doctest::Approx(100.0).epsilon(1e-14));
  const SphericalJoints k = ik_full({}, {-10, 0, -100}, flat());
  CHECK(std::fabs(k.q1) + std::fabs(k.q2) < 1e-12);
  CHECK(k.q3 == 100.0);
}

TEST_CASE("IK at the scenario start and end poses") {
  // Newton iteration in mpmath, 40 digits
  const SphericalJoints start = ik_full(kP0, kTip, {});
  CHECK(start.q1 == doctest::Approx(3.0889243330538183152).epsilon(1e-12));
  CHECK(start.q2 == doctest::Approx(-38.86948405885177707).epsilon(1e-12));
  CHECK(start.q3 == doctest::Approx(147.76873209766496464).epsilon(1e-12));
  const SphericalJoints end = ik_full({15, 20, -500, 0, 35, -60}, kTip, {});
  CHECK(end.q1 == doctest::Approx(20.794204690192983167).epsilon(1e-12));
  CHECK(end.q2 == doctest::Approx(-61.843531983295428946).epsilon(1e-12));
  CHECK(end.q3 == doctest::Approx(151.03784460995401979).epsilon(1e-12));

  SphericalJoints newton{0, 0, 150};
  REQUIRE(oracles::newton_ik(kP0, kTip, {}, newton));
  CHECK(newton.q1 == doctest::Approx(start.q1).epsilon(1e-10));
  CHECK(newton.q2 == doctest::Approx(start.q2).epsilon(1e-10));
}

TEST_CASE("tips outside the cone are unreachable") {
  SphericalGeometry g = flat();
  g.beta = 10;
  CHECK(error_kind([&] { ik_tip_platform({100, 0, 0}, g); }) == ErrorKind::Unreachable);
  CHECK(error_kind([&] { ik_tip_platform({0, 0, 0}, g); }) == ErrorKind::DegenerateInput);
}

TEST_CASE("solutions outside the joint travel are rejected") {
  SphericalGeometry g;
  g.q3_max = 100;
  CHECK(error_kind([&] { ik_full(kP0, kTip, g); }) == ErrorKind::JointLimit);
  CHECK(error_kind([&] { check_joints({95, 0, 10}, SphericalGeometry{}); }) == ErrorKind::JointLimit);
  CHECK(error_kind([&] { check_joints({0, 0, -1}, SphericalGeometry{}); }) == ErrorKind::JointLimit);
}

TEST_CASE("mirror branch reaches the same tip") {
  SphericalGeometry g;
  g.q1_min = g.q2_min = -180;
  g.q1_max = g.q2_max = 180;
  const SphericalJoints p = ik_full(kP0, kTip, g, IkBranch::Principal);
  const SphericalJoints m = ik_full(kP0, kTip, g, IkBranch::Mirror);
  CHECK(branch_of(p) == IkBranch::Principal);
  CHECK(branch_of(m) == IkBranch::Mirror);
  CHECK(std::fabs(m.q2 - p.q2) > 90);
  check_close(fk_tip_fixed(kP0, m, g), kTip, 1e-9);
}

TEST_CASE("mirrored module reaches the mirror-image tip") {
  const SphericalGeometry left = SphericalGeometry::left_default();
  const SphericalGeometry right = SphericalGeometry::right_default();
  CHECK(right.port == RcmPort::right());
  CHECK(right.alpha == -left.alpha);
  CHECK(right.mirrored() == left);
  const SphericalJoints j{12, -34, 150};
  const Vec3 l = tip_in_platform(j, left);
  check_close(tip_in_platform(j.mirrored(), right), {-l.x, l.y, l.z}, 1e-12);
}

TEST_CASE("geometry validation names the field") {
  SphericalGeometry g;
  g.beta = 95;
  CHECK_THROWS_WITH_AS(check_geometry(g), doctest::Contains("beta"), std::invalid_argument);
  g = {};
  g.q3_min = 10;
  g.q3_max = 5;
  CHECK_THROWS_AS(check_geometry(g), std::invalid_argument);
  CHECK_NOTHROW(check_geometry(SphericalGeometry::right_default()));
}

#include "silsrob/platform.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "silsrob/errors.hpp"

namespace silsrob {

RcmPort RcmPort::custom(const Vec3& offset, PortSide side) {
  if (!is_finite(offset)) throw std::invalid_argument("port offset must be finite");
  if (side == PortSide::Endoscope && !(offset == Vec3{}))
    throw std::invalid_argument("the endoscope port sits at the platform origin");
  return RcmPort(offset, side);
}

RcmPort RcmPort::mirrored() const {
  PortSide side = side_;
  if (side_ == PortSide::Left) side = PortSide::Right;
  if (side_ == PortSide::Right) side = PortSide::Left;
  return RcmPort({-offset_.x, offset_.y, offset_.z}, side);
}

void check_pose(const PlatformPose& pose) {
  for (double v : {pose.x, pose.y, pose.z, pose.psi, pose.theta, pose.phi}) {
    if (!std::isfinite(v))
      throw KinematicsError(ErrorKind::DegenerateInput, "platform pose has a non-finite component");
  }
  if (std::fabs(pose.theta) >= 90.0 - kGimbalMarginDeg) {
    throw KinematicsError(
        ErrorKind::GimbalProximity,
        fmt::format("platform theta = {} deg is within {} deg of the Euler singularity",
                    pose.theta, kGimbalMarginDeg));
  }
}

Mat3 platform_rotation(const PlatformPose& pose) {
  return euler_xyz(deg2rad(pose.psi), deg2rad(pose.theta), deg2rad(pose.phi));
}

Mat4 platform_matrix(const PlatformPose& pose) {
  check_pose(pose);
  return {platform_rotation(pose), pose.position()};
}

Vec3 rcm_fixed(const PlatformPose& pose, const RcmPort& port) {
  return last_column(compose(platform_matrix(pose), from_translation(port.offset())));
}

}  // namespace silsrob

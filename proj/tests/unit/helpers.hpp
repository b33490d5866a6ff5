#pragma once

#include <doctest.h>

#include "silsrob/transforms.hpp"

namespace silsrob::test {

inline void check_close(const Vec3& a, const Vec3& b, double tol) {
  INFO("a = (", a.x, ", ", a.y, ", ", a.z, ")  b = (", b.x, ", ", b.y, ", ", b.z, ")");
  CHECK(max_abs_diff(a, b) <= tol);
}

inline void check_close(const Mat3& a, const Mat3& b, double tol) { CHECK(max_abs_diff(a, b) <= tol); }

}  // namespace silsrob::test

#pragma once

// Fixed-size rotation and homogeneous-transform algebra.
//
// Vec3 and Mat3 are templated on the scalar so the Jacobian code can be
// evaluated with std::complex<double> (complex-step derivatives). Everything
// else in the library uses the double aliases.

#include <array>
#include <cmath>
#include <numbers>
#include <type_traits>

namespace silsrob {

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Keeps integer literals such as rot_x(0) from instantiating integer matrices.
template <typename T>
concept Scalar = !std::is_integral_v<T>;

template <typename T>
struct BasicVec3 {
  T x{};
  T y{};
  T z{};

  constexpr T operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr BasicVec3& operator+=(const BasicVec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr BasicVec3& operator-=(const BasicVec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  friend constexpr BasicVec3 operator+(BasicVec3 a, const BasicVec3& b) { return a += b; }
  friend constexpr BasicVec3 operator-(BasicVec3 a, const BasicVec3& b) { return a -= b; }
  friend constexpr BasicVec3 operator-(const BasicVec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr BasicVec3 operator*(const T& s, const BasicVec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend constexpr BasicVec3 operator*(const BasicVec3& a, const T& s) { return s * a; }
  friend constexpr BasicVec3 operator/(const BasicVec3& a, const T& s) {
    return {a.x / s, a.y / s, a.z / s};
  }
  friend constexpr bool operator==(const BasicVec3&, const BasicVec3&) = default;
};

using Vec3 = BasicVec3<double>;

template <typename T>
constexpr T dot(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
constexpr BasicVec3<T> cross(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::fmax(std::fabs(a.x - b.x), std::fmax(std::fabs(a.y - b.y), std::fabs(a.z - b.z)));
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Row-major 3x3 matrix; element (r, c) is r_{r+1,c+1}.
template <typename T>
struct BasicMat3 {
  std::array<T, 9> m{};

  static constexpr BasicMat3 identity() {
    BasicMat3 r;
    r.m[0] = r.m[4] = r.m[8] = T(1);
    return r;
  }

  static constexpr BasicMat3 from_columns(const BasicVec3<T>& c0, const BasicVec3<T>& c1,
                                          const BasicVec3<T>& c2) {
    BasicMat3 r;
    for (int i = 0; i < 3; ++i) {
      r(i, 0) = c0[i];
      r(i, 1) = c1[i];
      r(i, 2) = c2[i];
    }
    return r;
  }

  constexpr T operator()(int r, int c) const { return m[3 * r + c]; }
  constexpr T& operator()(int r, int c) { return m[3 * r + c]; }

  constexpr BasicVec3<T> row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
  constexpr BasicVec3<T> col(int c) const { return {m[c], m[3 + c], m[6 + c]}; }

  constexpr BasicMat3 transposed() const {
    BasicMat3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend constexpr BasicMat3 operator*(const BasicMat3& a, const BasicMat3& b) {
    BasicMat3 p;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        p(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    return p;
  }

  friend constexpr BasicVec3<T> operator*(const BasicMat3& a, const BasicVec3<T>& v) {
    return {dot(a.row(0), v), dot(a.row(1), v), dot(a.row(2), v)};
  }

  friend constexpr bool operator==(const BasicMat3&, const BasicMat3&) = default;
};

using Mat3 = BasicMat3<double>;

template <typename T>
constexpr T determinant(const BasicMat3<T>& a) {
  return dot(a.col(0), cross(a.col(1), a.col(2)));
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double e = 0.0;
  for (int i = 0; i < 9; ++i) e = std::fmax(e, std::fabs(a.m[i] - b.m[i]));
  return e;
}

// Orthonormality residual max|R^T R - I|.
inline double orthonormality_error(const Mat3& r) {
  return max_abs_diff(r.transposed() * r, Mat3::identity());
}

inline bool is_rotation(const Mat3& r, double tol = 1e-12) {
  return orthonormality_error(r) <= tol && std::fabs(determinant(r) - 1.0) <= tol;
}

template <Scalar T>
BasicMat3<T> rot_x(const T& angle) {
  using std::cos;
  using std::sin;
  const T c = cos(angle);
  const T s = sin(angle);
  BasicMat3<T> r;
  r.m = {T(1), T(0), T(0), T(0), c, -s, T(0), s, c};
  return r;
}

template <Scalar T>
BasicMat3<T> rot_y(const T& angle) {
  using std::cos;
  using std::sin;
  const T c = cos(angle);
  const T s = sin(angle);
  BasicMat3<T> r;
  r.m = {c, T(0), s, T(0), T(1), T(0), -s, T(0), c};
  return r;
}

template <Scalar T>
BasicMat3<T> rot_z(const T& angle) {
  using std::cos;
  using std::sin;
  const T c = cos(angle);
  const T s = sin(angle);
  BasicMat3<T> r;
  r.m = {c, -s, T(0), s, c, T(0), T(0), T(0), T(1)};
  return r;
}

/// X-Y-Z Euler angles (radians): R = Rx(psi) * Ry(theta) * Rz(phi), acting on
/// column vectors. Equivalent to intrinsic rotations x, y', z''.
template <Scalar T>
BasicMat3<T> euler_xyz(const T& psi, const T& theta, const T& phi) {
  return rot_x(psi) * rot_y(theta) * rot_z(phi);
}

inline Mat3 rot_x(double angle) { return rot_x<double>(angle); }
inline Mat3 rot_y(double angle) { return rot_y<double>(angle); }
inline Mat3 rot_z(double angle) { return rot_z<double>(angle); }
inline Mat3 euler_xyz(double psi, double theta, double phi) {
  return euler_xyz<double>(psi, theta, phi);
}

/// Recovers (psi, theta, phi) in radians from a rotation built by euler_xyz.
/// Valid away from theta = +-pi/2.
inline Vec3 euler_xyz_angles(const Mat3& r) {
  const double psi = std::atan2(-r(1, 2), r(2, 2));
  const double theta = std::atan2(r(0, 2), std::hypot(r(0, 0), r(0, 1)));
  const double phi = std::atan2(-r(0, 1), r(0, 0));
  return {psi, theta, phi};
}

// Homogeneous transform with an implicit (0,0,0,1) bottom row.
struct Mat4 {
  Mat3 rotation = Mat3::identity();
  Vec3 translation{};

  static Mat4 identity() { return {}; }

  // Row-major access to the full 4x4, including the fixed bottom row.
  double operator()(int r, int c) const {
    if (r == 3) return c == 3 ? 1.0 : 0.0;
    if (c == 3) return translation[r];
    return rotation(r, c);
  }

  friend bool operator==(const Mat4&, const Mat4&) = default;
};

inline Mat4 from_rotation(const Mat3& r) { return {r, {}}; }
inline Mat4 from_translation(const Vec3& t) { return {Mat3::identity(), t}; }

inline Mat4 trans_z(double d) { return from_translation({0.0, 0.0, d}); }

inline Mat4 compose(const Mat4& a, const Mat4& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

inline Vec3 apply_point(const Mat4& m, const Vec3& p) { return m.rotation * p + m.translation; }

inline Vec3 last_column(const Mat4& m) { return m.translation; }

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  return std::fmax(max_abs_diff(a.rotation, b.rotation), max_abs_diff(a.translation, b.translation));
}

}  // namespace silsrob

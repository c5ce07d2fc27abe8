#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace sensim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Aeronautical 3-2-1 attitude: yaw about z, then pitch about y, then roll
/// about x. Radians. Pitch is restricted to (-pi/2, pi/2).
struct EulerAngles {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

/// Skew-symmetric form of a vector: skew(v) * w == v x w.
inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

/// Direction cosine matrix mapping child-frame components into the parent
/// frame, R = Rz(yaw) Ry(pitch) Rx(roll).
inline Mat3 euler_to_rotmat(const EulerAngles& e) {
  const double cy = std::cos(e.yaw), sy = std::sin(e.yaw);
  const double cp = std::cos(e.pitch), sp = std::sin(e.pitch);
  const double cr = std::cos(e.roll), sr = std::sin(e.roll);
  Mat3 r;
  r << cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,
       sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,
       -sp, cp * sr, cp * cr;
  return r;
}

/// Inverse of euler_to_rotmat. Throws std::domain_error when the attitude is
/// within ~1e-9 of gimbal lock (|cos pitch| vanishing).
inline EulerAngles rotmat_to_euler(const Mat3& r) {
  const double cos_pitch = std::hypot(r(0, 0), r(1, 0));
  if (cos_pitch < 1.0e-9) {
    throw std::domain_error("degenerate attitude: pitch too close to +-90 deg for Euler extraction");
  }
  return {std::atan2(r(1, 0), r(0, 0)),
          std::atan2(-r(2, 0), cos_pitch),
          std::atan2(r(2, 1), r(2, 2))};
}

// Frame compositions for frames 0 -> 1 -> 2. Unless noted, every argument
// must already be expressed in one common frame; the result is in that frame.

/// t02 = r01 * t12 + t01, with t12 given in frame 1 and the result in frame 0.
inline Vec3 compose_position(const Vec3& t01, const Mat3& r01, const Vec3& t12) {
  return r01 * t12 + t01;
}

inline Vec3 compose_linear_velocity(const Vec3& v01, const Vec3& v12,
                                    const Vec3& w01, const Vec3& t12) {
  return v12 + v01 + w01.cross(t12);
}

/// Relative + transport + Coriolis terms.
inline Vec3 compose_linear_acceleration(const Vec3& a01, const Vec3& a12,
                                        const Vec3& alpha01, const Vec3& w01,
                                        const Vec3& t12, const Vec3& v12) {
  return a12 + a01 + alpha01.cross(t12) + w01.cross(w01.cross(t12)) +
         2.0 * w01.cross(v12);
}

inline Vec3 compose_angular_velocity(const Vec3& w01, const Vec3& w12) {
  return w12 + w01;
}

inline Vec3 compose_angular_acceleration(const Vec3& alpha01, const Vec3& alpha12,
                                         const Vec3& w01, const Vec3& w12) {
  return alpha12 + alpha01 + w01.cross(w12);
}

/// Motion of one frame with respect to another. All vector components are
/// expressed in the observer frame; mixing frames in a composition is a
/// contract violation on the caller's side.
struct FrameMotion {
  Vec3 position = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
  Vec3 angular_acceleration = Vec3::Zero();
};

struct PointKinematics {
  Vec3 angular_velocity;
  Vec3 angular_acceleration;
  Vec3 velocity;
  Vec3 acceleration;
};

/// Motion of a sensor reference point rigidly offset from the body origin by
/// a constant lever arm (same frame as the body motion components).
inline PointKinematics imu_point_kinematics(const FrameMotion& body, const Vec3& lever_arm) {
  const Vec3& w = body.angular_velocity;
  const Vec3& alpha = body.angular_acceleration;
  return {w,
          alpha,
          body.velocity + w.cross(lever_arm),
          body.acceleration + alpha.cross(lever_arm) + w.cross(w.cross(lever_arm))};
}

}  // namespace sensim

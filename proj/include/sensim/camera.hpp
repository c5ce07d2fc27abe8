#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Geometry>

#include "sensim/geodesy.hpp"
#include "sensim/imu.hpp"
#include "sensim/kinematics.hpp"
#include "sensim/truth.hpp"
#include "sensim/units.hpp"

namespace sensim {

/// Pinhole camera, distortion free.
struct CameraIntrinsics {
  double focal_length = 19.0;          // mm
  int image_width = 768;               // px
  int image_height = 1024;             // px
  double pixel_size = 17.0e-3;         // mm/px
  double principal_point_x = 384.5;    // px
  double principal_point_y = 511.5;    // px

  double focal_length_px() const { return focal_length / pixel_size; }
  double horizontal_fov() const {
    return 2.0 * std::atan(image_width * pixel_size / (2.0 * focal_length));
  }
  double vertical_fov() const {
    return 2.0 * std::atan(image_height * pixel_size / (2.0 * focal_length));
  }

  void validate() const {
    if (!(focal_length > 0.0) || !(pixel_size > 0.0) || image_width <= 0 || image_height <= 0) {
      throw std::invalid_argument("camera intrinsics must be positive");
    }
  }
};

/// Perspective projection of a camera-frame point (x right, y down, z along
/// the boresight, metres) onto the image plane. Throws std::domain_error for
/// points at or behind the camera.
inline Eigen::Vector2d project_point(const CameraIntrinsics& intrinsics, const Vec3& point) {
  if (!(point.z() > 0.0)) {
    throw std::domain_error("point is behind the camera");
  }
  const double f = intrinsics.focal_length_px();
  return {intrinsics.principal_point_x + f * point.x() / point.z(),
          intrinsics.principal_point_y + f * point.y() / point.z()};
}

/// Camera pose with respect to the Earth at one image tick: the true pose
/// and the pose the navigation system believes in (true body pose composed
/// with the estimated camera mounting).
struct CameraPoseSample {
  double t = 0.0;
  Geodetic position;
  Eigen::Quaterniond attitude{1.0, 0.0, 0.0, 0.0};  // camera to NED
  Geodetic position_est;
  Eigen::Quaterniond attitude_est{1.0, 0.0, 0.0, 0.0};
};

namespace detail {

inline CameraPoseSample compose_camera_pose(double t, const Geodetic& body_position,
                                            const Eigen::Quaterniond& q_nb, double mass,
                                            const MountingSpec& mount,
                                            const MountingSample& sample) {
  const Mat3 r_nb = q_nb.toRotationMatrix();
  const Vec3 lever = mounting_displacement(mount, mass);
  const Vec3 lever_est = lever + sample.position_est_offset;

  CameraPoseSample pose;
  pose.t = t;
  pose.position = geodetic_offset(body_position, r_nb * lever);
  pose.attitude = q_nb * Eigen::Quaterniond(sample.r_bp);
  pose.position_est = geodetic_offset(body_position, r_nb * lever_est);
  pose.attitude_est = q_nb * Eigen::Quaterniond(sample.r_bp_est);
  return pose;
}

}  // namespace detail

/// Camera poses at the image cadence from a truth trajectory. When dt_img is
/// an integer multiple of the truth period the truth grid is subsampled
/// exactly; otherwise position and mass are interpolated linearly and the
/// attitude spherically. Ticks run t = dt_img, 2 dt_img, ... up to the end
/// of the trajectory.
inline std::vector<CameraPoseSample> camera_pose_stream(const std::vector<TruthRecord>& truth,
                                                        const MountingSpec& mount,
                                                        const MountingSample& sample,
                                                        double dt_img) {
  if (truth.size() < 2) throw std::invalid_argument("camera pose stream needs at least two truth records");
  if (!(dt_img > 0.0)) throw std::invalid_argument("image period must be positive");

  const double t0 = truth.front().t;
  const double span = truth.back().t - t0;
  const double dt_truth = truth[1].t - truth[0].t;
  const double ratio = dt_img / dt_truth;
  const auto stride = static_cast<std::size_t>(std::llround(ratio));
  const bool integral = std::abs(ratio - static_cast<double>(stride)) < 1.0e-9 && stride > 0;

  const auto ticks = static_cast<std::size_t>(std::floor(span / dt_img + 1.0e-9));
  std::vector<CameraPoseSample> poses;
  poses.reserve(ticks);

  for (std::size_t k = 1; k <= ticks; ++k) {
    if (integral) {
      const TruthRecord& r = truth[k * stride];
      poses.push_back(detail::compose_camera_pose(r.t, r.position, r.attitude, r.mass,
                                                  mount, sample));
      continue;
    }
    const double t = t0 + static_cast<double>(k) * dt_img;
    std::size_t lo = static_cast<std::size_t>(std::floor((t - t0) / dt_truth));
    if (lo + 1 >= truth.size()) lo = truth.size() - 2;
    const TruthRecord& a = truth[lo];
    const TruthRecord& b = truth[lo + 1];
    const double u = (t - a.t) / (b.t - a.t);
    const Geodetic position{a.position.longitude + u * (b.position.longitude - a.position.longitude),
                            a.position.latitude + u * (b.position.latitude - a.position.latitude),
                            a.position.altitude + u * (b.position.altitude - a.position.altitude)};
    const Eigen::Quaterniond q = a.attitude.slerp(u, b.attitude);
    const double mass = a.mass + u * (b.mass - a.mass);
    poses.push_back(detail::compose_camera_pose(t, position, q, mass, mount, sample));
  }
  return poses;
}

}  // namespace sensim

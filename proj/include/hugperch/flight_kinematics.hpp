#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hugperch {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Attitude as (roll, pitch, yaw) in radians, yaw-pitch-roll (Z-Y-X) order.
using Attitude = Vec3;

struct TrackedTrajectory {
  std::vector<double> timestamps;  // s
  std::vector<Vec3> positions;     // m, inertial frame
  std::vector<Attitude> attitudes; // rad
  double mass = 0.0;               // kg
  double dt = 0.0;                 // nominal sample step, s

  std::size_t size() const { return timestamps.size(); }

  /// At least five samples, strictly increasing, every step within 1e-6 s of dt.
  void validate() const;
};

struct BodyStates {
  std::vector<Vec3> velocity;          // V_B = (u, v, w), m/s
  std::vector<Vec3> angular_velocity;  // Omega_B = (p, q, r), rad/s
  std::vector<Vec3> acceleration;      // a_B, m/s^2
};

struct ImpactEvent {
  double t_impact = 0.0;
  std::size_t impact_index = 0;
  double impact_speed = 0.0;  // V_i, m/s
  double impact_angle = 0.0;  // beta (pitch just before impact), rad
  double peak_acceleration = 0.0;  // a_i, m/s^2
  double peak_force = 0.0;         // F_i = m * a_i, N
  std::size_t window_end = 0;      // last sample of the impact phase
};

struct ReorientationOutcome {
  bool success = false;
  double t_max_pitch = 0.0;
  double max_pitch = 0.0;                     // rad
  std::optional<double> duration_to_vertical; // s after impact
};

/// Multiplying an inertial vector by this matrix expresses it in the body frame.
Mat3 rotation_inertial_to_body(const Attitude& gamma);

/// Maps attitude rates to body rates (well defined at 90 degrees pitch).
Mat3 euler_rate_matrix(const Attitude& gamma);

Vec3 body_velocity(const Vec3& p_dot, const Attitude& gamma);
Vec3 body_rates(const Vec3& gamma_dot, const Attitude& gamma);

/// Central differences inside, first-order one-sided at both ends.
/// Throws TooShort below three samples.
std::vector<double> differentiate(std::span<const double> series, double dt);
std::vector<Vec3> differentiate(std::span<const Vec3> series, double dt);

/// Centred moving average; a window of 1 returns the input.
std::vector<Vec3> moving_average(std::span<const Vec3> series, int window);

struct KinematicsOptions {
  int smoothing_window = 1;
};

BodyStates estimate_body_states(const TrackedTrajectory& traj, const KinematicsOptions& options = {});

struct ImpactOptions {
  double threshold_g = 3.0;  // deceleration along the flight direction
  int sustain_samples = 2;
};

/// The impact starts at the first sample whose deceleration along the flight
/// direction exceeds the threshold for `sustain_samples` consecutive samples.
/// The impact phase runs until the speed reaches its first local minimum.
/// Throws NoImpactFound.
ImpactEvent detect_impact(const TrackedTrajectory& traj, const BodyStates& states,
                          const ImpactOptions& options = {});

struct ReorientationOptions {
  double vertical_threshold = 85.0 * 3.14159265358979323846 / 180.0;  // rad
  double window = 0.5;                                                // s after impact
};

/// Pitch-only proxy: success when the pitch reaches the vertical threshold
/// within the window. The duration is measured to the first 90 degree crossing
/// when pitch gets there, otherwise to the threshold crossing.
ReorientationOutcome classify_reorientation(const TrackedTrajectory& traj, const ImpactEvent& event,
                                            const ReorientationOptions& options = {});

}  // namespace hugperch

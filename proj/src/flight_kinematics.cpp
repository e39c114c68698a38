#include "hugperch/flight_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"

namespace hugperch {
namespace {

template <typename T>
std::vector<T> central_difference(std::span<const T> x, double dt) {
  const std::size_t n = x.size();
  if (n < 3) {
    throw Error(ErrorKind::TooShort, "differentiation needs at least 3 samples, got " + std::to_string(n));
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::DomainError, "time step must be > 0");
  std::vector<T> d(n);
  d[0] = (x[1] - x[0]) / dt;
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (x[k + 1] - x[k - 1]) / (2.0 * dt);
  d[n - 1] = (x[n - 1] - x[n - 2]) / dt;
  return d;
}

// Removes 2*pi jumps so wrapped angles differentiate cleanly.
std::vector<Attitude> unwrap(const std::vector<Attitude>& angles) {
  std::vector<Attitude> out = angles;
  for (std::size_t k = 1; k < out.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      double delta = out[k][c] - out[k - 1][c];
      while (delta > kPi) {
        out[k][c] -= 2.0 * kPi;
        delta -= 2.0 * kPi;
      }
      while (delta < -kPi) {
        out[k][c] += 2.0 * kPi;
        delta += 2.0 * kPi;
      }
    }
  }
  return out;
}

}  // namespace

void TrackedTrajectory::validate() const {
  const std::size_t n = timestamps.size();
  if (n < 5) throw Error(ErrorKind::TooShort, "trajectory needs at least 5 samples");
  if (positions.size() != n || attitudes.size() != n) {
    throw Error(ErrorKind::Validation, "trajectory columns have different lengths");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::Validation, "trajectory time step must be > 0");
  if (!(mass > 0.0)) throw Error(ErrorKind::Validation, "trajectory mass must be > 0");
  for (std::size_t k = 1; k < n; ++k) {
    const double step = timestamps[k] - timestamps[k - 1];
    if (!(step > 0.0) || std::abs(step - dt) >= 1e-6) {
      std::ostringstream os;
      os << "non-uniform sampling at sample " << k << " (step " << step << " s, expected " << dt << " s)";
      throw Error(ErrorKind::Validation, os.str());
    }
  }
}

Mat3 rotation_inertial_to_body(const Attitude& gamma) {
  const double sf = std::sin(gamma[0]), cf = std::cos(gamma[0]);
  const double st = std::sin(gamma[1]), ct = std::cos(gamma[1]);
  const double sp = std::sin(gamma[2]), cp = std::cos(gamma[2]);
  Mat3 r;
  r << ct * cp, ct * sp, -st,
       st * sf * cp - sp * cf, st * sf * sp + cp * cf, ct * sf,
       st * cf * cp + sp * sf, st * cf * sp - cp * sf, ct * cf;
  return r;
}

Mat3 euler_rate_matrix(const Attitude& gamma) {
  const double sf = std::sin(gamma[0]), cf = std::cos(gamma[0]);
  const double st = std::sin(gamma[1]), ct = std::cos(gamma[1]);
  Mat3 j;
  j << 1.0, 0.0, -st,
       0.0, cf, sf * ct,
       0.0, -sf, cf * ct;
  return j;
}

Vec3 body_velocity(const Vec3& p_dot, const Attitude& gamma) {
  return rotation_inertial_to_body(gamma) * p_dot;
}

Vec3 body_rates(const Vec3& gamma_dot, const Attitude& gamma) {
  return euler_rate_matrix(gamma) * gamma_dot;
}

std::vector<double> differentiate(std::span<const double> series, double dt) {
  return central_difference(series, dt);
}

std::vector<Vec3> differentiate(std::span<const Vec3> series, double dt) {
  return central_difference(series, dt);
}

std::vector<Vec3> moving_average(std::span<const Vec3> series, int window) {
  if (window < 1) throw Error(ErrorKind::DomainError, "smoothing window must be >= 1");
  if (window == 1) return {series.begin(), series.end()};
  const int half = window / 2;
  const int n = static_cast<int>(series.size());
  std::vector<Vec3> out(series.size());
  for (int k = 0; k < n; ++k) {
    const int lo = std::max(0, k - half);
    const int hi = std::min(n - 1, k + half);
    Vec3 sum = Vec3::Zero();
    for (int j = lo; j <= hi; ++j) sum += series[j];
    out[k] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

BodyStates estimate_body_states(const TrackedTrajectory& traj, const KinematicsOptions& options) {
  traj.validate();
  const auto positions = moving_average(traj.positions, options.smoothing_window);
  const auto attitudes = moving_average(unwrap(traj.attitudes), options.smoothing_window);
  const auto p_dot = differentiate(std::span<const Vec3>(positions), traj.dt);
  const auto g_dot = differentiate(std::span<const Vec3>(attitudes), traj.dt);

  BodyStates s;
  s.velocity.reserve(traj.size());
  s.angular_velocity.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    s.velocity.push_back(body_velocity(p_dot[k], attitudes[k]));
    s.angular_velocity.push_back(body_rates(g_dot[k], attitudes[k]));
  }
  s.acceleration = differentiate(std::span<const Vec3>(s.velocity), traj.dt);
  return s;
}

ImpactEvent detect_impact(const TrackedTrajectory& traj, const BodyStates& states,
                          const ImpactOptions& options) {
  const std::size_t n = states.velocity.size();
  if (n != traj.size() || states.acceleration.size() != n) {
    throw Error(ErrorKind::Validation, "body states do not match the trajectory");
  }
  if (options.sustain_samples < 1) throw Error(ErrorKind::DomainError, "sustain_samples must be >= 1");
  const double threshold = options.threshold_g * kGravity;

  // Deceleration along the most recent non-zero flight direction.
  std::vector<double> decel(n, 0.0);
  Vec3 heading = Vec3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& v_prev = states.velocity[k == 0 ? 0 : k - 1];
    if (v_prev.norm() > 1e-9) heading = v_prev.normalized();
    decel[k] = -states.acceleration[k].dot(heading);
  }

  const std::size_t sustain = static_cast<std::size_t>(options.sustain_samples);
  std::size_t start = n;
  for (std::size_t k = 0; k + sustain <= n && start == n; ++k) {
    bool run = true;
    for (std::size_t j = k; j < k + sustain; ++j) run = run && decel[j] > threshold;
    if (run) start = k;
  }
  if (start == n) {
    std::ostringstream os;
    os << "deceleration never exceeds " << options.threshold_g << " g for " << sustain << " samples";
    throw Error(ErrorKind::NoImpactFound, os.str());
  }

  const std::size_t pre = start == 0 ? 0 : start - 1;
  ImpactEvent ev;
  ev.impact_index = start;
  ev.t_impact = traj.timestamps[start];
  ev.impact_speed = states.velocity[pre].norm();
  ev.impact_angle = traj.attitudes[pre][1];
  if (!(ev.impact_speed > 0.0)) {
    throw Error(ErrorKind::NoImpactFound, "robot is at rest before the detected impact");
  }

  std::size_t end = start;
  while (end + 1 < n && states.velocity[end + 1].norm() < states.velocity[end].norm()) ++end;
  ev.window_end = end;
  double peak = 0.0;
  for (std::size_t k = start; k <= end; ++k) peak = std::max(peak, states.acceleration[k].norm());
  ev.peak_acceleration = peak;
  ev.peak_force = traj.mass * peak;
  return ev;
}

ReorientationOutcome classify_reorientation(const TrackedTrajectory& traj, const ImpactEvent& event,
                                            const ReorientationOptions& options) {
  ReorientationOutcome out;
  const std::size_t n = traj.size();
  const std::size_t first = event.impact_index;
  if (first >= n) throw Error(ErrorKind::Validation, "impact index outside the trajectory");
  const double t0 = traj.timestamps[first];
  const double t_end = t0 + options.window + 1e-9;

  std::size_t last = first;
  out.max_pitch = traj.attitudes[first][1];
  out.t_max_pitch = t0;
  for (std::size_t k = first; k < n && traj.timestamps[k] <= t_end; ++k) {
    last = k;
    if (traj.attitudes[k][1] > out.max_pitch) {
      out.max_pitch = traj.attitudes[k][1];
      out.t_max_pitch = traj.timestamps[k];
    }
  }
  out.success = out.max_pitch >= options.vertical_threshold;
  if (!out.success) return out;

  const double target = out.max_pitch >= kPi / 2.0 ? kPi / 2.0 : options.vertical_threshold;
  for (std::size_t k = first; k <= last; ++k) {
    const double p = traj.attitudes[k][1];
    if (p < target) continue;
    double t = traj.timestamps[k];
    if (k > first) {
      const double p0 = traj.attitudes[k - 1][1];
      if (p > p0) t = traj.timestamps[k - 1] + (target - p0) / (p - p0) * (traj.timestamps[k] - traj.timestamps[k - 1]);
    }
    out.duration_to_vertical = t - t0;
    break;
  }
  return out;
}

}  // namespace hugperch

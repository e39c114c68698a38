#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hugperch/flight_kinematics.hpp"
#include "hugperch/statics_solver.hpp"
#include "hugperch/wrap_geometry.hpp"

namespace hugperch::testing {

/// 960 mm wingspan, 180 mm base, 2 x 195 mm segments, 1.36 N*mm/deg springs, 325 g.
RobotGeometry paper_robot();

struct FlightSpec {
  double speed = 5.0;          // m/s before impact
  double impact_pitch_deg = 20.0;
  double stop_duration = 0.025;  // s, constant deceleration to rest
  double peak_pitch_deg = 95.0;  // reached after the stop
  double rise_time = 0.2;        // s, pitch-up duration after the stop
  double mass = 0.55;
  double rate_hz = 240.0;
  int pre_samples = 48;
  int total_samples = 240;
  double heading_deg = 0.0;      // flight direction in the horizontal plane
};

struct SyntheticFlight {
  TrackedTrajectory trajectory;
  std::size_t impact_sample = 0;
  double t_90 = -1.0;  // analytic time of the 90 deg pitch crossing, -1 if never
};

/// Straight flight, constant-deceleration stop against the pole, then a
/// cosine pitch-up while at rest.
SyntheticFlight make_flight(const FlightSpec& spec);

struct OracleCheck {
  double force_residual = 0.0;   // max |row| over force equations, N
  double moment_residual = 0.0;  // max |row| over moment equations, N*m
  double solution_gap = 0.0;     // max |x_qr - x_solver|
  double direction_gap = 0.0;    // contact frames vs radial/tangential
  double friction_ratio_gap = 0.0;  // |F_t - mu_t F_n| over wing contacts
  double cone_violation = 0.0;   // max(|(F_t, F_v)| - mu_s F_n, -F_n, 0)
  int rank = 0;
  int unknowns = 0;
};

/// Assembles every body's planar force and moment balance from the wrap
/// geometry and solves it by column-pivoting QR.
OracleCheck equilibrium_oracle(const StaticSolution& solution, const RobotGeometry& robot);

}  // namespace hugperch::testing

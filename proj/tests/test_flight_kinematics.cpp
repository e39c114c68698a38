#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "hugperch/error.hpp"
#include "hugperch/flight_kinematics.hpp"
#include "hugperch/units.hpp"
#include "support.hpp"

using namespace hugperch;
using hugperch::testing::FlightSpec;
using hugperch::testing::make_flight;

namespace {

Attitude random_attitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(-kPi, kPi);
  std::uniform_real_distribution<double> b(-kPi / 2, kPi / 2);
  return {a(rng), b(rng), a(rng)};
}

Mat3 skew_to_vector_check(const Mat3& m) { return 0.5 * (m - m.transpose()); }

}  // namespace

TEST(Kinematics, RotationAtZeroIsIdentity) {
  EXPECT_TRUE(rotation_inertial_to_body(Attitude::Zero()).isApprox(Mat3::Identity(), 1e-15));
  EXPECT_TRUE(euler_rate_matrix(Attitude::Zero()).isApprox(Mat3::Identity(), 1e-15));
}

TEST(Kinematics, RotationIsOrthonormal) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Mat3 r = rotation_inertial_to_body(random_attitude(rng));
    EXPECT_LT((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(Kinematics, RotationIsYawPitchRoll) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const Attitude g = random_attitude(rng);
    const Mat3 body_to_inertial = (Eigen::AngleAxisd(g[2], Vec3::UnitZ()) * Eigen::AngleAxisd(g[1], Vec3::UnitY()) *
                                   Eigen::AngleAxisd(g[0], Vec3::UnitX()))
                                      .toRotationMatrix();
    EXPECT_LT((rotation_inertial_to_body(g) - body_to_inertial.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Kinematics, PitchNinetyEntries) {
  const Mat3 r = rotation_inertial_to_body(Attitude(0.0, kPi / 2, 0.0));
  EXPECT_NEAR(r(0, 2), -1.0, 1e-15);
  const Vec3 v = body_velocity(Vec3(5.0, 0.0, 0.0), Attitude(0.0, kPi / 2, 0.0));
  EXPECT_NEAR(v.z(), 5.0 * std::sin(kPi / 2), 1e-12);
  EXPECT_NEAR(v.x(), 0.0, 1e-12);
  const Vec3 w = body_rates(Vec3(0.7, 0.0, 0.0), Attitude(0.0, kPi / 2, 0.0));
  EXPECT_NEAR(w.x(), 0.7, 1e-15);
}

TEST(Kinematics, LevelFlightVelocity) {
  const Vec3 v = body_velocity(Vec3(5.0, 0.0, 0.0), Attitude::Zero());
  EXPECT_EQ(v, Vec3(5.0, 0.0, 0.0));
  EXPECT_EQ(body_rates(Vec3(0.0, 1.3, 0.0), Attitude::Zero()), Vec3(0.0, 1.3, 0.0));
  EXPECT_EQ(body_rates(Vec3::Zero(), Attitude(0.3, 0.2, 0.1)), Vec3::Zero());
}

TEST(Kinematics, BodyVelocityPreservesNorm) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p(n(rng), n(rng), n(rng));
    EXPECT_NEAR(body_velocity(p, random_attitude(rng)).norm(), p.norm(), 1e-12);
  }
}

TEST(Kinematics, RateMatrixMatchesRotationDerivative) {
  // R' = -[w]x R for the inertial-to-body rotation.
  std::mt19937_64 rng(14);
  std::normal_distribution<double> n(0.0, 1.0);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const Attitude g = random_attitude(rng);
    const Vec3 rate(n(rng), n(rng), n(rng));
    const Mat3 dr = (rotation_inertial_to_body(g + h * rate) - rotation_inertial_to_body(g - h * rate)) / (2 * h);
    const Mat3 s = skew_to_vector_check(-dr * rotation_inertial_to_body(g).transpose());
    const Vec3 from_r(s(2, 1), s(0, 2), s(1, 0));
    EXPECT_LT((from_r - body_rates(rate, g)).norm(), 1e-7);
  }
}

TEST(Kinematics, DifferentiateExactOnAffine) {
  std::vector<double> v;
  for (int k = 0; k < 20; ++k) v.push_back(2.0 * 0.1 * k - 3.0);
  for (double d : differentiate(v, 0.1)) EXPECT_NEAR(d, 2.0, 1e-12);
  for (double d : differentiate(std::vector<double>(10, 4.0), 0.1)) EXPECT_EQ(d, 0.0);
}

TEST(Kinematics, DifferentiateExactOnQuadraticInterior) {
  const double dt = 0.05;
  std::vector<double> v;
  for (int k = 0; k < 30; ++k) v.push_back(3.0 * (k * dt) * (k * dt));
  const auto d = differentiate(v, dt);
  for (int k = 1; k + 1 < 30; ++k) EXPECT_NEAR(d[k], 6.0 * k * dt, 1e-10);
  EXPECT_NEAR(d[0], 3.0 * dt, 1e-12);  // forward difference of t^2 term
}

TEST(Kinematics, DifferentiateTaylorBound) {
  const double dt = 1.0 / 240.0;
  std::vector<double> v;
  for (int k = 0; k < 2400; ++k) v.push_back(std::sin(k * dt));
  const auto d = differentiate(v, dt);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) worst = std::max(worst, std::abs(d[k] - std::cos(k * dt)));
  EXPECT_LT(worst, dt * dt / 6.0);
}

TEST(Kinematics, DifferentiateTimeReversal) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(50);
  for (auto& x : v) x = n(rng);
  std::vector<double> rev(v.rbegin(), v.rend());
  const auto d = differentiate(v, 0.01);
  const auto dr = differentiate(rev, 0.01);
  for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(dr[v.size() - 1 - k], -d[k], 1e-9);
}

TEST(Kinematics, DifferentiateNeedsThreeSamples) {
  try {
    differentiate(std::vector<double>{1.0, 2.0}, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooShort);
  }
}

TEST(Kinematics, MovingAverage) {
  std::vector<Vec3> v{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}};
  EXPECT_EQ(moving_average(v, 1), v);
  const auto m = moving_average(v, 3);
  EXPECT_NEAR(m[0].x(), 1.5, 1e-15);
  EXPECT_NEAR(m[1].x(), 2.0, 1e-15);
  EXPECT_NEAR(m[3].x(), 3.5, 1e-15);
  EXPECT_THROW(moving_average(v, 0), Error);
}

TEST(Kinematics, TrajectoryValidation) {
  auto flight = make_flight(FlightSpec{}).trajectory;
  EXPECT_NO_THROW(flight.validate());
  auto jittered = flight;
  jittered.timestamps[10] += 1e-5;
  EXPECT_THROW(jittered.validate(), Error);
  auto short_one = flight;
  short_one.timestamps.resize(4);
  short_one.positions.resize(4);
  short_one.attitudes.resize(4);
  EXPECT_THROW(short_one.validate(), Error);
}

TEST(Kinematics, SyntheticImpactClosedForm) {
  FlightSpec spec;
  spec.speed = 5.0;
  spec.mass = 0.22;
  const auto f = make_flight(spec);
  const BodyStates states = estimate_body_states(f.trajectory);
  const ImpactEvent e = detect_impact(f.trajectory, states);
  EXPECT_EQ(e.impact_index, f.impact_sample);
  EXPECT_NEAR(e.impact_speed, 5.0, 1e-9);
  EXPECT_NEAR(e.impact_angle, deg_to_rad(20.0), 1e-15);
  EXPECT_NEAR(e.peak_acceleration, 200.0, 1e-6);
  EXPECT_NEAR(e.peak_force, 44.0, 1e-6);
  EXPECT_EQ(e.peak_force, 0.22 * e.peak_acceleration);
}

TEST(Kinematics, HeadingDoesNotMatter) {
  for (double heading : {0.0, 90.0, -135.0, 179.0}) {
    FlightSpec spec;
    spec.heading_deg = heading;
    const auto f = make_flight(spec);
    const ImpactEvent e = detect_impact(f.trajectory, estimate_body_states(f.trajectory));
    EXPECT_NEAR(e.impact_speed, 5.0, 1e-9) << heading;
    EXPECT_NEAR(e.peak_acceleration, 200.0, 1e-6) << heading;
  }
}

TEST(Kinematics, ConstantVelocityHasNoImpact) {
  FlightSpec spec;
  spec.pre_samples = 400;
  spec.total_samples = 200;
  const auto f = make_flight(spec);
  try {
    detect_impact(f.trajectory, estimate_body_states(f.trajectory));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoImpactFound);
  }
}

TEST(Kinematics, ThresholdIsConfigurable) {
  const auto f = make_flight(FlightSpec{});
  const auto states = estimate_body_states(f.trajectory);
  ImpactOptions strict;
  strict.threshold_g = 25.0;
  EXPECT_THROW(detect_impact(f.trajectory, states, strict), Error);
}

TEST(Kinematics, ReorientationSuccessAndDuration) {
  const auto f = make_flight(FlightSpec{});
  const ImpactEvent e = detect_impact(f.trajectory, estimate_body_states(f.trajectory));
  const auto out = classify_reorientation(f.trajectory, e);
  EXPECT_TRUE(out.success);
  ASSERT_TRUE(out.duration_to_vertical.has_value());
  const double expected = f.t_90 - f.trajectory.timestamps[e.impact_index];
  EXPECT_NEAR(*out.duration_to_vertical, expected, 2e-4);
  EXPECT_NEAR(*out.duration_to_vertical, 0.196, 0.059);
  EXPECT_NEAR(out.max_pitch, deg_to_rad(95.0), 1e-12);
}

TEST(Kinematics, ReorientationFailure) {
  FlightSpec spec;
  spec.peak_pitch_deg = 60.0;
  const auto f = make_flight(spec);
  const ImpactEvent e = detect_impact(f.trajectory, estimate_body_states(f.trajectory));
  const auto out = classify_reorientation(f.trajectory, e);
  EXPECT_FALSE(out.success);
  EXPECT_FALSE(out.duration_to_vertical.has_value());
}

TEST(Kinematics, ReorientationIgnoresTimeShift) {
  auto f = make_flight(FlightSpec{});
  const ImpactEvent e = detect_impact(f.trajectory, estimate_body_states(f.trajectory));
  const auto base = classify_reorientation(f.trajectory, e);
  auto shifted = f.trajectory;
  for (auto& t : shifted.timestamps) t += 12.5;
  ImpactEvent e2 = e;
  e2.t_impact += 12.5;
  const auto moved = classify_reorientation(shifted, e2);
  EXPECT_EQ(base.success, moved.success);
  EXPECT_NEAR(*base.duration_to_vertical, *moved.duration_to_vertical, 1e-9);
  EXPECT_NEAR(moved.t_max_pitch - base.t_max_pitch, 12.5, 1e-9);
}

TEST(Kinematics, YawWrapDoesNotSpike) {
  FlightSpec spec;
  spec.heading_deg = 179.99;
  auto wrapped = make_flight(spec).trajectory;
  auto smooth = wrapped;
  // Small yaw oscillation across +-180 deg.
  for (std::size_t k = 0; k < wrapped.size(); ++k) {
    const double yaw = kPi - 0.001 + 0.002 * std::sin(0.3 * static_cast<double>(k));
    smooth.attitudes[k][2] = yaw;
    wrapped.attitudes[k][2] = yaw > kPi ? yaw - 2 * kPi : yaw;
  }
  const auto a = estimate_body_states(wrapped);
  const auto b = estimate_body_states(smooth);
  for (std::size_t k = 0; k < a.angular_velocity.size(); ++k) {
    EXPECT_LT((a.angular_velocity[k] - b.angular_velocity[k]).norm(), 1e-9) << k;
    EXPECT_LT((a.velocity[k] - b.velocity[k]).norm(), 1e-9) << k;
  }
}

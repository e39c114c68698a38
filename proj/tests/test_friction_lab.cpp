#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hugperch/error.hpp"
#include "hugperch/friction_lab.hpp"
#include "hugperch/units.hpp"

using namespace hugperch;

TEST(FrictionLab, PullTest) {
  EXPECT_DOUBLE_EQ(mu_from_pull(0.2 * kGravity, 0.2), 1.0);
  EXPECT_EQ(mu_from_pull(0.0, 0.2), 0.0);
  EXPECT_NEAR(mu_from_pull(0.4905, 0.1), 0.5, 1e-15);
  EXPECT_NEAR(mu_from_pull(0.4905 * 3, 0.3), mu_from_pull(0.4905, 0.1), 1e-15);
  EXPECT_THROW(mu_from_pull(1.0, 0.0), Error);
  EXPECT_THROW(mu_from_pull(-1.0, 0.1), Error);
}

TEST(FrictionLab, InclineTest) {
  EXPECT_NEAR(mu_from_angle(deg_to_rad(45.0)), 1.0, 1e-15);
  EXPECT_EQ(mu_from_angle(0.0), 0.0);
  EXPECT_NEAR(mu_from_angle(deg_to_rad(26.565)), 0.5, 1e-5);
  EXPECT_NEAR(mu_from_angle(std::atan(0.5)), 0.5, 1e-15);
  EXPECT_THROW(mu_from_angle(kPi / 2), Error);
  EXPECT_THROW(mu_from_angle(-0.1), Error);
}

TEST(FrictionLab, VerticalTool) {
  EXPECT_EQ(mu_from_vertical_tool(0.05 * kGravity, 0.05, 1000.0, 0.01), 0.0);
  EXPECT_NEAR(mu_from_vertical_tool(5.4905, 0.05, 1000.0, 0.01), 0.5, 1e-15);
  const double net = 3.0;
  EXPECT_NEAR(mu_from_vertical_tool(net + 0.49, 0.05, 1000.0, 0.02),
              0.5 * mu_from_vertical_tool(net + 0.49, 0.05, 1000.0, 0.01), 1e-15);
  EXPECT_THROW(mu_from_vertical_tool(5.0, 0.05, 0.0, 0.01), Error);
  EXPECT_THROW(mu_from_vertical_tool(0.1, 0.05, 1000.0, 0.01), Error);
}

TEST(FrictionLab, PullAndInclineAgree) {
  for (int i = 0; i <= 200; ++i) {
    const double mu = 0.01 * i;
    EXPECT_NEAR(mu_from_angle(std::atan(mu)), mu_from_pull(mu * 0.7 * kGravity, 0.7), 1e-12);
  }
}

TEST(FrictionLab, Aggregate) {
  const std::vector<double> one{0.42};
  const auto s1 = aggregate(one);
  EXPECT_EQ(s1.mean, 0.42);
  EXPECT_EQ(s1.stddev, 0.0);
  EXPECT_EQ(s1.count, 1u);
  const std::vector<double> two{0.4, 0.6};
  const auto s2 = aggregate(two);
  EXPECT_NEAR(s2.mean, 0.5, 1e-15);
  EXPECT_NEAR(s2.stddev, std::sqrt(0.02), 1e-15);
  EXPECT_THROW(aggregate(std::vector<double>{}), Error);
}

TEST(FrictionLab, PooledMeasurements) {
  std::vector<FrictionMeasurement> batch;
  for (int i = 0; i < 10; ++i) {
    FrictionMeasurement pull;
    pull.method = FrictionMethod::Pull;
    pull.f_pull = (0.45 + 0.01 * i) * 0.1 * kGravity;
    pull.mass = 0.1;
    batch.push_back(evaluate(pull));
    FrictionMeasurement incline;
    incline.method = FrictionMethod::Incline;
    incline.angle = std::atan(0.5 + 0.01 * i);
    batch.push_back(evaluate(incline));
  }
  const auto s = aggregate(std::span<const FrictionMeasurement>(batch));
  EXPECT_EQ(s.count, 20u);
  EXPECT_NEAR(s.mean, 0.52, 1e-12);
}

TEST(FrictionLab, MethodNames) {
  for (auto m : {FrictionMethod::Pull, FrictionMethod::Incline, FrictionMethod::VerticalTool}) {
    EXPECT_EQ(parse_friction_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_friction_method("sled"), Error);
}

TEST(FrictionLab, FlexuralRigidity) {
  EXPECT_EQ(flexural_rigidity({70e9, 0.0, 0.002}), 0.0);
  EXPECT_EQ(flexural_rigidity({70e9, 0.01, 0.0}), 0.0);
  const BeamSpec thin{120e9, 0.01, 0.001};
  const BeamSpec thick{120e9, 0.01, 0.002};
  EXPECT_NEAR(flexural_rigidity(thick), 8.0 * flexural_rigidity(thin), 1e-12);
  // 10 mm wide carbon strip, E = 120 GPa: the height giving D = 0.233 N*m^2.
  const double h = std::cbrt(12.0 * 0.233 / (120e9 * 0.01));
  EXPECT_NEAR(flexural_rigidity({120e9, 0.01, h}), 0.233, 1e-12);
}

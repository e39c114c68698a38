#include <gtest/gtest.h>

#include <cmath>

#include "hugperch/design_explorer.hpp"
#include "hugperch/error.hpp"
#include "hugperch/units.hpp"
#include "support.hpp"

using namespace hugperch;
using hugperch::testing::paper_robot;

namespace {

std::vector<SegmentationConfig> paper_segmentations() {
  return {{"205", 0.140, {0.205, 0.205}}, {"195", 0.180, {0.195, 0.195}}, {"185", 0.220, {0.185, 0.185}}};
}

std::vector<PoleSpec> poles(std::initializer_list<double> diameters, double mu) {
  std::vector<PoleSpec> out;
  for (double d : diameters) out.push_back(PoleSpec{d, mu, {}});
  return out;
}

}  // namespace

TEST(DesignExplorer, SweepTableIsRowMajor) {
  SweepGrid grid{{0.27, 0.35, 0.45}, {0.8, 1.2}, paper_robot()};
  const SweepTable t = sweep(grid, 0.325 * kGravity);
  ASSERT_EQ(t.cells.size(), 6u);
  for (std::size_t d = 0; d < 3; ++d) {
    for (std::size_t m = 0; m < 2; ++m) {
      EXPECT_EQ(t.at(d, m).diameter, grid.diameters[d]);
      EXPECT_EQ(t.at(d, m).mu_static, grid.mu_values[m]);
    }
  }
}

TEST(DesignExplorer, SweepCellMatchesDirectCalls) {
  const RobotGeometry robot = paper_robot();
  const PoleSpec pole{0.3, 1.0, {}};
  const SweepCell c = sweep_cell(robot, pole, 0.325 * kGravity);
  const WrapGeometry w = solve_wrap(robot, pole);
  EXPECT_TRUE(c.feasible);
  EXPECT_EQ(c.max_payload, max_payload(robot, pole));
  EXPECT_EQ(c.squeeze_force, squeeze_force(*unloaded_grip(w, robot, 1.0)));
  const auto loaded = find_min_friction_split(w, robot, 0.325 * kGravity);
  EXPECT_EQ(c.vertical_fraction, loaded.split.vertical_fraction());
  EXPECT_EQ(c.mu_required, loaded.split.mu_total);
}

TEST(DesignExplorer, SqueezeUndefinedWithoutUnloadedGrip) {
  const SweepCell c = sweep_cell(paper_robot(), {0.45, 0.05, {}}, 0.0);
  EXPECT_FALSE(c.feasible);
  EXPECT_TRUE(std::isnan(c.squeeze_force));
  EXPECT_FALSE(c.error.has_value());
}

TEST(DesignExplorer, CellErrorsAreRecorded) {
  SweepGrid grid{{0.30, 0.90}, {1.0}, paper_robot()};
  const SweepTable t = sweep(grid, 0.0);
  EXPECT_FALSE(t.at(0, 0).error.has_value());
  ASSERT_TRUE(t.at(1, 0).error.has_value());
  EXPECT_EQ(*t.at(1, 0).error, ErrorKind::GeometryInfeasible);
  EXPECT_FALSE(t.at(1, 0).feasible);
  EXPECT_FALSE(t.at(1, 0).message.empty());
}

TEST(DesignExplorer, EmptyOrUnsortedGridIsRejected) {
  EXPECT_THROW(sweep(SweepGrid{{}, {1.0}, paper_robot()}, 0.0), Error);
  EXPECT_THROW(sweep(SweepGrid{{0.3}, {}, paper_robot()}, 0.0), Error);
  EXPECT_THROW(sweep(SweepGrid{{0.4, 0.3}, {1.0}, paper_robot()}, 0.0), Error);
}

TEST(DesignExplorer, ParallelSweepMatchesSequential) {
  SweepGrid grid{{0.27, 0.31, 0.36, 0.41, 0.46}, {0.6, 0.9, 1.2}, paper_robot()};
  const SweepTable a = sweep(grid, 0.325 * kGravity, {}, false);
  const SweepTable b = sweep(grid, 0.325 * kGravity, {}, true);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_EQ(a.cells[k].max_payload, b.cells[k].max_payload);
    EXPECT_EQ(a.cells[k].mu_required, b.cells[k].mu_required);
    EXPECT_EQ(a.cells[k].horizontal_fraction, b.cells[k].horizontal_fraction);
    EXPECT_EQ(std::isnan(a.cells[k].squeeze_force), std::isnan(b.cells[k].squeeze_force));
    if (!std::isnan(a.cells[k].squeeze_force)) EXPECT_EQ(a.cells[k].squeeze_force, b.cells[k].squeeze_force);
  }
}

TEST(DesignExplorer, SegmentationRankingPrefers195) {
  const auto ranking = compare_segmentations(0.96, paper_segmentations(),
                                             poles({0.25, 0.26, 0.265, 0.29, 0.31, 0.315, 0.33, 0.345, 0.35, 0.36}, 1.0),
                                             paper_robot());
  const auto ranked = ranking.ranked();
  EXPECT_EQ(ranked.front().label, "195");
  EXPECT_EQ(ranked.front().rank, 1);
  for (std::size_t i = 0; i < ranking.results.size(); ++i) EXPECT_EQ(ranking.results[i].label, paper_segmentations()[i].label);
}

TEST(DesignExplorer, SegmentationNeedsMatchingWingspan) {
  auto configs = paper_segmentations();
  configs[0].segment_lengths = {0.2, 0.2};
  EXPECT_THROW(compare_segmentations(0.96, configs, poles({0.3}, 1.0), paper_robot()), Error);
  EXPECT_THROW(compare_segmentations(0.96, {}, poles({0.3}, 1.0), paper_robot()), Error);
  EXPECT_THROW(compare_segmentations(0.96, paper_segmentations(), {}, paper_robot()), Error);
}

TEST(DesignExplorer, SegmentationOutOfRangePoleCountsAsZero) {
  const auto ranking = compare_segmentations(0.96, paper_segmentations(), poles({0.3, 0.9}, 1.0), paper_robot());
  for (const auto& r : ranking.results) {
    EXPECT_FALSE(r.feasible[1]);
    EXPECT_EQ(r.payloads[1], 0.0);
  }
}

TEST(DesignExplorer, PredictionFlagsRange) {
  const auto p = predict_static_experiments(paper_robot(), poles({0.25, 0.315}, 1.0));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_TRUE(p[0].below_min_diameter);
  EXPECT_FALSE(p[1].below_min_diameter);
  EXPECT_FALSE(p[1].above_max_diameter);
  EXPECT_TRUE(p[0].body_supported);
  EXPECT_NEAR(p[0].predicted_mass, 0.325 + p[0].max_payload, 1e-15);
  EXPECT_GT(p[0].predicted_mass, p[1].predicted_mass);
}

TEST(DesignExplorer, UnsupportedBodyPredictsZeroPayload) {
  const auto p = predict_static_experiments(paper_robot(), poles({0.3}, 0.3));
  EXPECT_FALSE(p[0].body_supported);
  EXPECT_EQ(p[0].max_payload, 0.0);
  EXPECT_EQ(p[0].predicted_mass, 0.325);
}

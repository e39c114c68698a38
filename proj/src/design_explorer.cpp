#include "hugperch/design_explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hugperch/units.hpp"
#include "parallel.hpp"

namespace hugperch {
namespace {

void require_increasing(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw Error(ErrorKind::DomainError, std::string(name) + " axis is empty");
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw Error(ErrorKind::DomainError, std::string(name) + " axis must be strictly increasing");
    }
  }
}

RobotGeometry with_segmentation(const RobotGeometry& base, const SegmentationConfig& config) {
  RobotGeometry robot = base;
  robot.rigid_base_width = config.rigid_base_width;
  robot.segment_lengths = config.segment_lengths;
  if (robot.spring_stiffnesses.size() != robot.segment_lengths.size()) {
    throw Error(ErrorKind::DomainError, "configuration '" + config.label +
                                            "' has a different segment count than the spring list");
  }
  return robot;
}

}  // namespace

void SweepGrid::validate() const {
  require_increasing(diameters, "diameter");
  require_increasing(mu_values, "mu_static");
  robot.validate();
}

SweepCell sweep_cell(const RobotGeometry& robot, const PoleSpec& pole, double weight,
                     const SplitSearchOptions& options) {
  SweepCell cell;
  cell.diameter = pole.diameter;
  cell.mu_static = pole.mu_static;
  try {
    const WrapGeometry wrap = solve_wrap(robot, pole);
    cell.near_range = wrap.near_range;
    const auto grip = unloaded_grip(wrap, robot, pole.mu_static);
    cell.squeeze_force = grip ? squeeze_force(*grip) : std::numeric_limits<double>::quiet_NaN();
    const StaticSolution loaded = find_min_friction_split(wrap, robot, weight, options);
    cell.feasible = loaded.feasible;
    if (loaded.feasible) {
      cell.vertical_fraction = loaded.split.vertical_fraction();
      cell.mu_required = loaded.split.mu_total;
      cell.horizontal_fraction = loaded.split.horizontal_fraction;
    }
    cell.max_payload = max_payload(robot, pole, options);
  } catch (const Error& e) {
    cell.feasible = false;
    cell.error = e.kind();
    cell.message = e.what();
  }
  return cell;
}

SweepTable sweep(const SweepGrid& grid, double weight, const SplitSearchOptions& options,
                 bool parallel) {
  grid.validate();
  SweepTable table;
  table.diameters = grid.diameters;
  table.mu_values = grid.mu_values;
  const std::size_t nm = grid.mu_values.size();
  const int count = static_cast<int>(grid.diameters.size() * nm);
  table.cells.resize(count);
  SplitSearchOptions inner = options;
  inner.parallel = false;
  detail::for_each_index(count, parallel, [&](int k) {
    const PoleSpec pole{grid.diameters[k / nm], grid.mu_values[k % nm], {}};
    table.cells[k] = sweep_cell(grid.robot, pole, weight, inner);
  });
  return table;
}

double SegmentationConfig::wingspan() const {
  return rigid_base_width +
         2.0 * std::accumulate(segment_lengths.begin(), segment_lengths.end(), 0.0);
}

std::vector<SegmentationResult> SegmentationRanking::ranked() const {
  std::vector<SegmentationResult> out = results;
  std::sort(out.begin(), out.end(),
            [](const SegmentationResult& a, const SegmentationResult& b) { return a.rank < b.rank; });
  return out;
}

SegmentationRanking compare_segmentations(double wingspan,
                                          const std::vector<SegmentationConfig>& configs,
                                          const std::vector<PoleSpec>& poles,
                                          const RobotGeometry& springs_and_mass,
                                          const SplitSearchOptions& options) {
  if (configs.empty()) throw Error(ErrorKind::Empty, "no segmentation configurations given");
  if (poles.empty()) throw Error(ErrorKind::Empty, "no poles given");
  for (const auto& c : configs) {
    if (std::abs(c.wingspan() - wingspan) > 1e-9) {
      throw Error(ErrorKind::DomainError, "configuration '" + c.label +
                                              "' does not match the target wingspan");
    }
  }

  SegmentationRanking ranking;
  ranking.poles = poles;
  for (const auto& config : configs) {
    const RobotGeometry robot = with_segmentation(springs_and_mass, config);
    SegmentationResult r;
    r.label = config.label;
    for (const auto& pole : poles) {
      double payload = 0.0;
      bool ok = false;
      try {
        const WrapGeometry wrap = solve_wrap(robot, pole);
        ok = find_min_friction_split(wrap, robot, robot.body_mass * kGravity, options).feasible;
        if (ok) payload = max_payload(robot, pole, options);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::GeometryInfeasible) throw;
      }
      r.payloads.push_back(payload);
      r.feasible.push_back(ok);
      r.feasible_count += ok ? 1 : 0;
    }
    ranking.results.push_back(std::move(r));
  }

  std::vector<std::size_t> common;
  for (std::size_t p = 0; p < poles.size(); ++p) {
    const bool all = std::all_of(ranking.results.begin(), ranking.results.end(),
                                 [p](const SegmentationResult& r) { return r.feasible[p]; });
    if (all) common.push_back(p);
  }
  for (auto& r : ranking.results) {
    double sum = 0.0;
    for (std::size_t p : common) sum += r.payloads[p];
    r.mean_common_payload = common.empty() ? 0.0 : sum / static_cast<double>(common.size());
  }

  std::vector<std::size_t> order(ranking.results.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = ranking.results[a];
    const auto& rb = ranking.results[b];
    if (ra.mean_common_payload != rb.mean_common_payload) {
      return ra.mean_common_payload > rb.mean_common_payload;
    }
    if (ra.feasible_count != rb.feasible_count) return ra.feasible_count > rb.feasible_count;
    if (ra.label != rb.label) return ra.label < rb.label;
    return ra.payloads > rb.payloads;
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    ranking.results[order[k]].rank = static_cast<int>(k) + 1;
  }
  return ranking;
}

std::vector<StaticPrediction> predict_static_experiments(const RobotGeometry& robot,
                                                         const std::vector<PoleSpec>& poles,
                                                         const SplitSearchOptions& options) {
  const DiameterRange range = diameter_range(robot);
  std::vector<StaticPrediction> out;
  for (const auto& pole : poles) {
    StaticPrediction p;
    p.pole = pole;
    const WrapGeometry wrap = solve_wrap(robot, pole);
    p.below_min_diameter = pole.diameter < range.d_min;
    p.above_max_diameter = pole.diameter > range.d_max;
    p.body_supported =
        find_min_friction_split(wrap, robot, robot.body_mass * kGravity, options).feasible;
    p.max_payload = p.body_supported ? max_payload(robot, pole, options) : 0.0;
    p.predicted_mass = robot.body_mass + p.max_payload;
    out.push_back(p);
  }
  return out;
}

}  // namespace hugperch

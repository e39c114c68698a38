#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hugperch/error.hpp"
#include "hugperch/statics_solver.hpp"

namespace hugperch {

struct SweepGrid {
  std::vector<double> diameters;  // m, strictly increasing
  std::vector<double> mu_values;  // strictly increasing
  RobotGeometry robot;

  void validate() const;
};

struct SweepCell {
  double diameter = 0.0;
  double mu_static = 0.0;
  bool feasible = false;
  /// Wing squeeze of the unloaded grip at its minimum in-plane friction; NaN
  /// when mu_static cannot hold even the unloaded grip.
  double squeeze_force = 0.0;
  double max_payload = 0.0;        // kg
  /// F_v / F_f of the minimum-friction split holding the sweep weight.
  double vertical_fraction = 0.0;
  double mu_required = 0.0;
  double horizontal_fraction = 0.0;
  bool near_range = false;
  std::optional<ErrorKind> error;
  std::string message;
};

/// Row-major table: cells[i * mu_values.size() + j] holds (diameters[i], mu_values[j]).
struct SweepTable {
  std::vector<double> diameters;
  std::vector<double> mu_values;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t d, std::size_t m) const { return cells.at(d * mu_values.size() + m); }
};

SweepCell sweep_cell(const RobotGeometry& robot, const PoleSpec& pole, double weight,
                     const SplitSearchOptions& options = {});

/// Per-cell failures are recorded in the cell; the sweep itself only throws
/// for an invalid grid.
SweepTable sweep(const SweepGrid& grid, double weight, const SplitSearchOptions& options = {},
                 bool parallel = false);

struct SegmentationConfig {
  std::string label;
  double rigid_base_width = 0.0;      // m
  std::vector<double> segment_lengths;  // m

  double wingspan() const;
};

struct SegmentationResult {
  std::string label;
  std::vector<double> payloads;     // kg per pole, 0 where infeasible
  std::vector<bool> feasible;       // body weight supported
  double mean_common_payload = 0.0; // over poles every config supports
  int feasible_count = 0;
  int rank = 0;                     // 1 = best
};

struct SegmentationRanking {
  std::vector<PoleSpec> poles;
  std::vector<SegmentationResult> results;  // input order

  /// Results sorted best first.
  std::vector<SegmentationResult> ranked() const;
};

/// `springs_and_mass` supplies spring stiffnesses and body mass; each config
/// replaces base width and segment lengths. Every config must match
/// `wingspan` to 1e-9 m.
SegmentationRanking compare_segmentations(double wingspan,
                                          const std::vector<SegmentationConfig>& configs,
                                          const std::vector<PoleSpec>& poles,
                                          const RobotGeometry& springs_and_mass,
                                          const SplitSearchOptions& options = {});

struct StaticPrediction {
  PoleSpec pole;
  double predicted_mass = 0.0;  // kg, body mass + payload
  double max_payload = 0.0;     // kg
  bool body_supported = false;
  bool below_min_diameter = false;  // the "*" marker
  bool above_max_diameter = false;
};

/// Throws GeometryInfeasible for a pole beyond the near-range margin.
std::vector<StaticPrediction> predict_static_experiments(const RobotGeometry& robot,
                                                         const std::vector<PoleSpec>& poles,
                                                         const SplitSearchOptions& options = {});

}  // namespace hugperch

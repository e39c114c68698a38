#pragma once

#include <string>
#include <vector>

#include "hugperch/design_explorer.hpp"
#include "hugperch/flight_kinematics.hpp"
#include "hugperch/friction_lab.hpp"
#include "hugperch/statics_solver.hpp"

namespace hugperch {

/// Nine significant digits, the precision of every CSV we write.
std::string format_sig(double value);

std::string range_csv(const RobotGeometry& robot, const DiameterRange& range);
/// Wrap and tip angle (deg) sampled at `samples` diameters across [lo, hi].
std::string wrap_curve_csv(const RobotGeometry& robot, double lo, double hi, int samples);

std::string solution_csv(const StaticSolution& solution);
std::string solution_text(const StaticSolution& solution, const EquilibriumResiduals& residuals,
                          double weight);

std::string sweep_csv(const SweepTable& table);
std::string design_csv(const SegmentationRanking& ranking);
std::string predict_csv(const std::vector<StaticPrediction>& predictions);

struct FlightRecord {
  std::string source;
  double mass = 0.0;
  ImpactEvent impact;
  ReorientationOutcome outcome;
  std::string error;  // set when the file could not be analysed
};

struct FlightSummary {
  std::size_t analysed = 0;
  std::size_t failed = 0;
  double success_rate = 0.0;
  double mean_impact_speed = 0.0;
  double mean_duration = 0.0;  // over successes with a measured duration
};

FlightSummary summarize(const std::vector<FlightRecord>& flights);
std::string flight_summary_csv(const FlightSummary& summary);

std::string flights_csv(const std::vector<FlightRecord>& flights);
std::string body_states_csv(const TrackedTrajectory& traj, const BodyStates& states);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares; throws DomainError for fewer than two distinct x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Per-row values, then mean and stddev per method and pooled.
std::string friction_csv(const std::vector<FrictionMeasurement>& measurements);

}  // namespace hugperch

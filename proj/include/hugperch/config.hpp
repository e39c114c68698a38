#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hugperch/design_explorer.hpp"
#include "hugperch/flight_kinematics.hpp"
#include "hugperch/friction_lab.hpp"
#include "hugperch/wrap_geometry.hpp"

namespace hugperch {

// Plain-text run configuration:
//
//   # comment
//   [robot]
//   rigid_base_width = 180 mm
//   segment_lengths = 195 mm, 195 mm
//   spring_stiffness = 1.36 N*mm/deg        # one value or one per hinge
//   body_mass = 325 g
//
//   [pole]                                  # repeatable
//   label = I
//   diameter = 250 mm
//   mu_static = 0.8
//
// Dimensional values require a unit suffix and are stored in SI.

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;
};

struct ConfigDocument {
  std::string source;
  std::vector<ConfigSection> sections;
};

/// Syntax only; throws Error{Parse} with "source:line: ..." messages.
ConfigDocument parse_config_document(std::string_view text, const std::string& source);

enum class Quantity { Length, Mass, Force, Stiffness, Angle, Time, Percent };

/// "195 mm" -> 0.195. Throws Parse on a missing or foreign unit.
double parse_quantity(std::string_view text, Quantity kind);
double parse_number(std::string_view text);

/// Spec of a diameter axis: explicit values, linspace(a, b, n), or
/// admissible(n) which spans the robot's [d_min, d_max] once the robot is known.
struct AxisSpec {
  std::vector<double> values;
  std::optional<int> admissible_count;

  std::vector<double> resolve(const std::optional<RobotGeometry>& robot) const;
};

struct SweepSettings {
  AxisSpec diameters;
  AxisSpec mu_values;
  std::optional<double> weight;  // N; defaults to the robot's body weight
};

struct DesignSettings {
  double wingspan = 0.0;
};

struct AnalysisSettings {
  ImpactOptions impact;
  ReorientationOptions reorientation;
  KinematicsOptions kinematics;
  double grid_step_percent = 0.5;
};

struct RunConfig {
  std::optional<RobotGeometry> robot;
  std::vector<PoleSpec> poles;
  std::optional<SweepSettings> sweep;
  std::optional<DesignSettings> design;
  std::vector<SegmentationConfig> segmentations;
  AnalysisSettings analysis;
};

/// Validates every section, rejecting unknown sections and keys.
RunConfig interpret(const ConfigDocument& doc);
RunConfig parse_run_config(std::string_view text, const std::string& source = "<config>");

/// Reads and merges several files (robot file + pole file, ...). A section that
/// may appear once must not be repeated across files.
RunConfig load_run_config(const std::vector<std::filesystem::path>& paths);

std::string read_text_file(const std::filesystem::path& path);

/// Emits sections that parse back to identical values.
std::string format_robot(const RobotGeometry& robot);
std::string format_pole(const PoleSpec& pole);

// Trajectory files:
//
//   # rate_hz=240 mass_kg=0.22
//   t,x,y,z,roll,pitch,yaw
//   0.000000,0.0,0.0,1.0,0.0,5.0,0.0
//
// Positions in metres, angles in degrees, one row per sample.

/// `mass_override` replaces the header mass when set.
TrackedTrajectory parse_trajectory(std::string_view text, const std::string& source,
                                   std::optional<double> mass_override = std::nullopt);
TrackedTrajectory load_trajectory(const std::filesystem::path& path,
                                  std::optional<double> mass_override = std::nullopt);
std::string format_trajectory(const TrackedTrajectory& traj);

// Friction measurement batches (CSV, blank cells allowed):
//
//   method,f_pull_n,mass_kg,angle_deg,k_n_per_m,dl_mm
//   pull,0.49,0.1,,,
//   incline,,,26.6,,
//   vertical_tool,5.49,0.05,,1000,10
std::vector<FrictionMeasurement> parse_friction_csv(std::string_view text, const std::string& source);

}  // namespace hugperch

#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace hugperch {

enum class FrictionMethod { Pull, Incline, VerticalTool };

std::string_view to_string(FrictionMethod method) noexcept;
FrictionMethod parse_friction_method(std::string_view text);

/// Horizontal pull test: mu = F_pull / (m g).
double mu_from_pull(double f_pull, double mass);

/// Tilting-plane test at the slip angle: mu = tan(theta), theta in [0, 90 deg).
double mu_from_angle(double theta);

/// Vertical pole tool pressing the sample with springs of total stiffness k
/// compressed by dl: mu = (F_pull - m g) / (k dl).
double mu_from_vertical_tool(double f_pull, double mass, double stiffness, double compression);

struct FrictionMeasurement {
  FrictionMethod method = FrictionMethod::Pull;
  double f_pull = 0.0;       // N
  double mass = 0.0;         // kg
  double angle = 0.0;        // rad
  double stiffness = 0.0;    // N/m
  double compression = 0.0;  // m
  double mu_static = 0.0;    // filled by evaluate()
};

FrictionMeasurement evaluate(FrictionMeasurement m);

struct FrictionSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) form, 0 for a single value
  std::size_t count = 0;
};

/// Throws Empty on an empty input.
FrictionSummary aggregate(std::span<const double> values);
FrictionSummary aggregate(std::span<const FrictionMeasurement> measurements);

struct BeamSpec {
  double modulus = 0.0;  // E, Pa
  double width = 0.0;    // b, m
  double height = 0.0;   // h, m
};

/// Cantilever bending stiffness D = E b h^3 / 12.
double flexural_rigidity(const BeamSpec& beam);

}  // namespace hugperch

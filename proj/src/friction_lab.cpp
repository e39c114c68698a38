#include "hugperch/friction_lab.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"

namespace hugperch {

std::string_view to_string(FrictionMethod method) noexcept {
  switch (method) {
    case FrictionMethod::Pull: return "pull";
    case FrictionMethod::Incline: return "incline";
    case FrictionMethod::VerticalTool: return "vertical_tool";
  }
  return "unknown";
}

FrictionMethod parse_friction_method(std::string_view text) {
  if (text == "pull") return FrictionMethod::Pull;
  if (text == "incline") return FrictionMethod::Incline;
  if (text == "vertical_tool") return FrictionMethod::VerticalTool;
  throw Error(ErrorKind::Parse, "unknown friction method '" + std::string(text) + "'");
}

double mu_from_pull(double f_pull, double mass) {
  if (!(mass > 0.0)) throw Error(ErrorKind::DomainError, "block mass must be > 0");
  if (!(f_pull >= 0.0)) throw Error(ErrorKind::DomainError, "pull force must be >= 0");
  return f_pull / (mass * kGravity);
}

double mu_from_angle(double theta) {
  if (!(theta >= 0.0 && theta < kPi / 2.0)) {
    throw Error(ErrorKind::DomainError, "friction angle must lie in [0, 90) degrees");
  }
  return std::tan(theta);
}

double mu_from_vertical_tool(double f_pull, double mass, double stiffness, double compression) {
  const double normal = stiffness * compression;
  if (!(normal > 0.0)) throw Error(ErrorKind::DomainError, "spring normal force k*dl must be > 0");
  if (!(mass >= 0.0)) throw Error(ErrorKind::DomainError, "sample mass must be >= 0");
  const double weight = mass * kGravity;
  if (!(f_pull >= weight)) {
    throw Error(ErrorKind::DomainError, "pull force is below the sample weight");
  }
  return (f_pull - weight) / normal;
}

FrictionMeasurement evaluate(FrictionMeasurement m) {
  switch (m.method) {
    case FrictionMethod::Pull: m.mu_static = mu_from_pull(m.f_pull, m.mass); break;
    case FrictionMethod::Incline: m.mu_static = mu_from_angle(m.angle); break;
    case FrictionMethod::VerticalTool:
      m.mu_static = mu_from_vertical_tool(m.f_pull, m.mass, m.stiffness, m.compression);
      break;
  }
  return m;
}

FrictionSummary aggregate(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::Empty, "no measurements to aggregate");
  FrictionSummary s;
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

FrictionSummary aggregate(std::span<const FrictionMeasurement> measurements) {
  std::vector<double> mu;
  mu.reserve(measurements.size());
  for (const auto& m : measurements) mu.push_back(m.mu_static);
  return aggregate(std::span<const double>(mu));
}

double flexural_rigidity(const BeamSpec& beam) {
  if (!(beam.modulus >= 0.0 && beam.width >= 0.0 && beam.height >= 0.0)) {
    throw Error(ErrorKind::DomainError, "beam properties must be non-negative");
  }
  return beam.modulus * beam.width * beam.height * beam.height * beam.height / 12.0;
}

}  // namespace hugperch

#include "hugperch/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"

namespace hugperch {
namespace {

std::string side_name(const BodyId& body) {
  if (body.is_fuselage()) return "fuselage";
  return std::string(body.side == Side::Right ? "right" : "left") + "_" + std::to_string(body.segment + 1);
}

const char* flag(bool b) { return b ? "1" : "0"; }

std::string cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_sig(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

std::string optional_sig(double value) { return std::isnan(value) ? std::string() : format_sig(value); }

}  // namespace

std::string range_csv(const RobotGeometry& robot, const DiameterRange& range) {
  const double span = robot.wingspan();
  std::ostringstream os;
  os << "quantity,value_m,fraction_of_wingspan\n";
  os << "wingspan," << format_sig(span) << ",1\n";
  os << "d_min," << format_sig(range.d_min) << ',' << format_sig(range.d_min / span) << '\n';
  os << "d_max," << format_sig(range.d_max) << ',' << format_sig(range.d_max / span) << '\n';
  return os.str();
}

std::string wrap_curve_csv(const RobotGeometry& robot, double lo, double hi, int samples) {
  if (samples < 2 || !(hi > lo)) throw Error(ErrorKind::DomainError, "curve needs hi > lo and >= 2 samples");
  std::ostringstream os;
  os << "diameter_m,wrap_angle_deg,tip_angle_deg\n";
  for (int i = 0; i < samples; ++i) {
    const double d = lo + (hi - lo) * i / (samples - 1);
    os << format_sig(d) << ',' << format_sig(rad_to_deg(wrap_angle_at(robot, d))) << ','
       << format_sig(rad_to_deg(tip_angle_at(robot, d))) << '\n';
  }
  return os.str();
}

std::string solution_csv(const StaticSolution& s) {
  std::ostringstream os;
  os << "pole,diameter_m,body,normal_n,tangential_n,vertical_n,x_m,y_m\n";
  for (const auto& f : s.forces) {
    os << cell(s.wrap.pole.label) << ',' << format_sig(s.wrap.pole.diameter) << ',' << side_name(f.body) << ',' << format_sig(f.normal) << ',' << format_sig(f.tangential) << ','
       << format_sig(f.vertical) << ',' << format_sig(f.application_point.x()) << ','
       << format_sig(f.application_point.y()) << '\n';
  }
  return os.str();
}

std::string solution_text(const StaticSolution& s, const EquilibriumResiduals& residuals, double weight) {
  std::ostringstream os;
  const auto& w = s.wrap;
  os << "pole: d = " << format_sig(w.pole.diameter) << " m, mu_s = " << format_sig(w.pole.mu_static);
  if (!w.pole.label.empty()) os << " (" << w.pole.label << ")";
  os << "\n";
  os << "wrap angle: " << format_sig(rad_to_deg(w.wrap_angle)) << " deg, tip angle: "
     << format_sig(rad_to_deg(w.tip_angle)) << " deg" << (w.near_range ? " (near range)" : "") << "\n";
  os << "hinge angles (deg):";
  for (double a : w.hinge_angles) os << ' ' << format_sig(rad_to_deg(a));
  os << "\nspring moments (N*m):";
  for (double m : s.spring_moments) os << ' ' << format_sig(m);
  os << "\nweight: " << format_sig(weight) << " N\n";
  os << "status: " << to_string(s.status) << "\n";
  os << "friction: mu = " << format_sig(s.split.mu_total) << ", mu_t = " << format_sig(s.split.mu_tangential)
     << ", mu_v = " << format_sig(s.split.mu_vertical) << ", mobilization = " << format_sig(s.split.mobilization)
     << "\n";
  os << "squeeze force: " << format_sig(s.squeeze_force) << " N\n";
  os << "vertical capacity: " << format_sig(s.vertical_capacity) << " N\n";
  os << "contacts:\n";
  for (const auto& f : s.forces) {
    os << "  " << side_name(f.body) << ": F_n = " << format_sig(f.normal) << " N, F_t = " << format_sig(f.tangential)
       << " N, F_v = " << format_sig(f.vertical) << " N\n";
  }
  os << "residuals: force " << format_sig(residuals.max_force) << " N, moment " << format_sig(residuals.max_moment)
     << " N*m\n";
  return os.str();
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "diameter_m,mu_static,feasible,squeeze_force_n,max_payload_kg,vertical_fraction,mu_required,"
        "horizontal_fraction,near_range,error\n";
  for (const auto& c : table.cells) {
    os << format_sig(c.diameter) << ',' << format_sig(c.mu_static) << ',' << flag(c.feasible) << ','
       << optional_sig(c.squeeze_force) << ',' << format_sig(c.max_payload) << ',' << format_sig(c.vertical_fraction)
       << ',' << format_sig(c.mu_required) << ',' << format_sig(c.horizontal_fraction) << ',' << flag(c.near_range)
       << ',' << (c.error ? std::string(to_string(*c.error)) : std::string()) << '\n';
  }
  return os.str();
}

std::string design_csv(const SegmentationRanking& ranking) {
  std::ostringstream os;
  os << "rank,label,feasible_count,mean_common_payload_kg";
  for (std::size_t p = 0; p < ranking.poles.size(); ++p) {
    const auto& pole = ranking.poles[p];
    os << ",payload_" << (pole.label.empty() ? std::to_string(p + 1) : pole.label) << "_kg";
  }
  os << '\n';
  for (const auto& r : ranking.ranked()) {
    os << r.rank << ',' << cell(r.label) << ',' << r.feasible_count << ',' << format_sig(r.mean_common_payload);
    for (double v : r.payloads) os << ',' << format_sig(v);
    os << '\n';
  }
  return os.str();
}

std::string predict_csv(const std::vector<StaticPrediction>& predictions) {
  std::ostringstream os;
  os << "pole,diameter_m,mu_static,body_supported,max_payload_kg,predicted_mass_kg,below_min_diameter,"
        "above_max_diameter\n";
  for (const auto& p : predictions) {
    os << cell(p.pole.label) << ',' << format_sig(p.pole.diameter) << ',' << format_sig(p.pole.mu_static) << ','
       << flag(p.body_supported) << ',' << format_sig(p.max_payload) << ',' << format_sig(p.predicted_mass) << ','
       << flag(p.below_min_diameter) << ',' << flag(p.above_max_diameter) << '\n';
  }
  return os.str();
}

std::string flights_csv(const std::vector<FlightRecord>& flights) {
  std::ostringstream os;
  os << "source,mass_kg,t_impact_s,impact_speed_m_s,impact_angle_deg,peak_acceleration_m_s2,peak_force_n,"
        "success,max_pitch_deg,duration_to_vertical_s,error\n";
  for (const auto& f : flights) {
    os << cell(f.source) << ',' << format_sig(f.mass) << ',';
    if (!f.error.empty()) {
      os << ",,,,,,,,," << cell(f.error) << '\n';
      continue;
    }
    os << format_sig(f.impact.t_impact) << ',' << format_sig(f.impact.impact_speed) << ','
       << format_sig(rad_to_deg(f.impact.impact_angle)) << ',' << format_sig(f.impact.peak_acceleration) << ','
       << format_sig(f.impact.peak_force) << ',' << flag(f.outcome.success) << ','
       << format_sig(rad_to_deg(f.outcome.max_pitch)) << ','
       << (f.outcome.duration_to_vertical ? format_sig(*f.outcome.duration_to_vertical) : std::string()) << ",\n";
  }
  return os.str();
}

FlightSummary summarize(const std::vector<FlightRecord>& flights) {
  FlightSummary s;
  std::size_t successes = 0, timed = 0;
  double speed = 0.0, duration = 0.0;
  for (const auto& f : flights) {
    if (!f.error.empty()) {
      ++s.failed;
      continue;
    }
    ++s.analysed;
    speed += f.impact.impact_speed;
    if (f.outcome.success) {
      ++successes;
      if (f.outcome.duration_to_vertical) {
        ++timed;
        duration += *f.outcome.duration_to_vertical;
      }
    }
  }
  if (s.analysed > 0) {
    s.success_rate = static_cast<double>(successes) / static_cast<double>(s.analysed);
    s.mean_impact_speed = speed / static_cast<double>(s.analysed);
  }
  if (timed > 0) s.mean_duration = duration / static_cast<double>(timed);
  return s;
}

std::string flight_summary_csv(const FlightSummary& s) {
  std::ostringstream os;
  os << "analysed,failed,success_rate,mean_impact_speed_m_s,mean_duration_s\n";
  os << s.analysed << ',' << s.failed << ',' << format_sig(s.success_rate) << ',' << format_sig(s.mean_impact_speed)
     << ',' << format_sig(s.mean_duration) << '\n';
  return os.str();
}

std::string body_states_csv(const TrackedTrajectory& traj, const BodyStates& states) {
  std::ostringstream os;
  os << "t_s,u_m_s,v_m_s,w_m_s,p_rad_s,q_rad_s,r_rad_s,ax_m_s2,ay_m_s2,az_m_s2\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << format_sig(traj.timestamps[k]);
    for (int c = 0; c < 3; ++c) os << ',' << format_sig(states.velocity[k][c]);
    for (int c = 0; c < 3; ++c) os << ',' << format_sig(states.angular_velocity[k][c]);
    for (int c = 0; c < 3; ++c) os << ',' << format_sig(states.acceleration[k][c]);
    os << '\n';
  }
  return os.str();
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::DomainError, "line fit needs at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::DomainError, "line fit needs two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::string friction_csv(const std::vector<FrictionMeasurement>& measurements) {
  std::ostringstream os;
  os << "row,method,mu_static\n";
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    os << i + 1 << ',' << to_string(measurements[i].method) << ',' << format_sig(measurements[i].mu_static) << '\n';
  }
  auto emit = [&](std::string_view name, const std::vector<double>& values) {
    if (values.empty()) return;
    const FrictionSummary s = aggregate(values);
    os << "mean," << name << ',' << format_sig(s.mean) << '\n';
    os << "stddev," << name << ',' << format_sig(s.stddev) << '\n';
  };
  std::vector<double> pooled;
  for (auto method : {FrictionMethod::Pull, FrictionMethod::Incline, FrictionMethod::VerticalTool}) {
    std::vector<double> values;
    for (const auto& m : measurements) {
      if (m.method == method) values.push_back(m.mu_static);
    }
    emit(to_string(method), values);
    pooled.insert(pooled.end(), values.begin(), values.end());
  }
  emit("pooled", pooled);
  return os.str();
}

}  // namespace hugperch

#include "support.hpp"

#include <algorithm>
#include <cmath>

#include "hugperch/units.hpp"

namespace hugperch::testing {
namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

RobotGeometry paper_robot() {
  RobotGeometry r;
  r.rigid_base_width = 0.180;
  r.segment_lengths = {0.195, 0.195};
  r.spring_stiffnesses = {nmm_per_deg_to_nm_per_rad(1.36), nmm_per_deg_to_nm_per_rad(1.36)};
  r.body_mass = 0.325;
  return r;
}

SyntheticFlight make_flight(const FlightSpec& spec) {
  SyntheticFlight out;
  TrackedTrajectory& t = out.trajectory;
  t.dt = 1.0 / spec.rate_hz;
  t.mass = spec.mass;
  const double heading = deg_to_rad(spec.heading_deg);
  const Vec3 dir(std::cos(heading), std::sin(heading), 0.0);
  const double t_i = spec.pre_samples * t.dt;
  const double decel = spec.speed / spec.stop_duration;
  const double t_stop = t_i + spec.stop_duration;
  const double beta = deg_to_rad(spec.impact_pitch_deg);
  const double peak = deg_to_rad(spec.peak_pitch_deg);
  const Vec3 start(0.0, 0.0, 1.5);

  for (int k = 0; k < spec.total_samples; ++k) {
    const double time = k * t.dt;
    double s = 0.0;
    if (time <= t_i) {
      s = spec.speed * time;
    } else if (time <= t_stop) {
      const double u = time - t_i;
      s = spec.speed * t_i + spec.speed * u - 0.5 * decel * u * u;
    } else {
      s = spec.speed * t_i + 0.5 * spec.speed * spec.stop_duration;
    }
    double pitch = beta;
    if (time > t_stop) {
      const double u = std::min(1.0, (time - t_stop) / spec.rise_time);
      pitch = beta + (peak - beta) * 0.5 * (1.0 - std::cos(kPi * u));
    }
    t.timestamps.push_back(time);
    t.positions.push_back(start + s * dir);
    t.attitudes.emplace_back(0.0, pitch, heading);
  }
  out.impact_sample = static_cast<std::size_t>(spec.pre_samples);
  if (peak >= kPi / 2 && beta < kPi / 2) {
    const double frac = (kPi / 2 - beta) / (peak - beta);
    out.t_90 = t_stop + spec.rise_time * std::acos(1.0 - 2.0 * frac) / kPi;
  }
  return out;
}

OracleCheck equilibrium_oracle(const StaticSolution& s, const RobotGeometry& robot) {
  const int n = static_cast<int>(robot.segments_per_wing());
  const auto& w = s.wrap;
  const double mu_t = s.split.mu_tangential;
  const double mu_s = w.pole.mu_static;

  // Unknowns: right normals, left normals, right hinge forces, left hinge
  // forces, fuselage contact force (x, y).
  const int n_unknowns = 2 * n + 4 * n + 2;
  const int n_rows = 3 * (2 * n + 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_rows, n_unknowns);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_rows);
  std::vector<bool> moment_row(n_rows, false);
  auto normal_col = [&](int side, int i) { return side * n + i; };
  auto hinge_col = [&](int side, int i) { return 2 * n + side * 2 * n + 2 * i; };
  const int base_col = 6 * n;

  OracleCheck check;
  int row = 0;
  for (int side = 0; side < 2; ++side) {
    const WingLayout& layout = side == 0 ? w.right : w.left;
    const double spin = side == 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
      const Vec2 c = layout.contact_points[i];
      const Vec2 radial = c / c.norm();
      const Vec2 wrap_dir = spin * Vec2(-radial.y(), radial.x());
      const Vec2 per_normal = radial + mu_t * wrap_dir;
      const Vec2 h = layout.hinge_points[i];
      // force rows
      for (int d = 0; d < 2; ++d) {
        a(row + d, normal_col(side, i)) = per_normal[d];
        a(row + d, hinge_col(side, i) + d) = 1.0;
        if (i + 1 < n) a(row + d, hinge_col(side, i + 1) + d) = -1.0;
      }
      // moment about the origin
      const int m = row + 2;
      moment_row[m] = true;
      a(m, normal_col(side, i)) = cross(c, per_normal);
      a(m, hinge_col(side, i)) = -h.y();
      a(m, hinge_col(side, i) + 1) = h.x();
      double spring = s.spring_moments[i];
      if (i + 1 < n) {
        const Vec2 h_next = layout.hinge_points[i + 1];
        a(m, hinge_col(side, i + 1)) = h_next.y();
        a(m, hinge_col(side, i + 1) + 1) = -h_next.x();
        spring -= s.spring_moments[i + 1];
      }
      b(m) = -spin * spring;
      row += 3;
    }
  }
  // rigid base
  for (int d = 0; d < 2; ++d) {
    a(row + d, base_col + d) = 1.0;
    for (int side = 0; side < 2; ++side) a(row + d, hinge_col(side, 0) + d) = -1.0;
  }
  const int m = row + 2;
  moment_row[m] = true;
  const Vec2 c0 = w.fuselage_contact;
  a(m, base_col) = -c0.y();
  a(m, base_col + 1) = c0.x();
  for (int side = 0; side < 2; ++side) {
    const Vec2 h = (side == 0 ? w.right : w.left).hinge_points[0];
    a(m, hinge_col(side, 0)) = h.y();
    a(m, hinge_col(side, 0) + 1) = -h.x();
  }
  // spring moments on the base cancel between the wings

  // Solver values in the same layout.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_unknowns);
  for (int side = 0; side < 2; ++side) {
    const WingLayout& layout = side == 0 ? w.right : w.left;
    const double spin = side == 0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
      const ContactForce& f = s.forces.at(1 + side * n + i);
      x(normal_col(side, i)) = f.normal;
      const Vec2 r = s.hinge_reactions.at(side * n + i);
      x(hinge_col(side, i)) = r.x();
      x(hinge_col(side, i) + 1) = r.y();
      const Vec2 radial = layout.contact_points[i].normalized();
      const Vec2 wrap_dir = spin * Vec2(-radial.y(), radial.x());
      check.direction_gap = std::max({check.direction_gap, (f.normal_direction - radial).norm(),
                                      (f.tangent_direction - wrap_dir).norm(),
                                      (f.application_point - layout.contact_points[i]).norm()});
      check.friction_ratio_gap = std::max(check.friction_ratio_gap, std::abs(f.tangential - mu_t * f.normal));
    }
  }
  const Vec2 base_force = s.fuselage().in_plane();
  x(base_col) = base_force.x();
  x(base_col + 1) = base_force.y();
  check.direction_gap = std::max(check.direction_gap, (s.fuselage().normal_direction - c0.normalized()).norm());

  const Eigen::VectorXd r = a * x - b;
  for (int k = 0; k < n_rows; ++k) {
    double& slot = moment_row[k] ? check.moment_residual : check.force_residual;
    slot = std::max(slot, std::abs(r(k)));
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  check.rank = static_cast<int>(qr.rank());
  check.unknowns = n_unknowns;
  const Eigen::VectorXd x_qr = qr.solve(b);
  check.solution_gap = (x_qr - x).cwiseAbs().maxCoeff();

  for (const auto& f : s.forces) {
    const double friction = std::hypot(f.tangential, f.vertical);
    check.cone_violation = std::max({check.cone_violation, friction - mu_s * f.normal - 1e-12 * std::max(1.0, f.normal),
                                     -f.normal});
  }
  return check;
}

}  // namespace hugperch::testing

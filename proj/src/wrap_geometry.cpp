#include "hugperch/wrap_geometry.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"

namespace hugperch {
namespace {

constexpr double kDiameterTol = 1e-6;  // m
constexpr double kAngleTol = 1e-9;     // rad
constexpr double kBracketLow = 0.05;   // fraction of wingspan

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_angle(const Vec2& from, const Vec2& to) {
  return std::atan2(cross(from, to), from.dot(to));
}

Vec2 mirror(const Vec2& p) { return {-p.x(), p.y()}; }

WingLayout mirrored(const WingLayout& w) {
  WingLayout out;
  out.contact_arms = w.contact_arms;
  for (const auto& p : w.hinge_points) out.hinge_points.push_back(mirror(p));
  for (const auto& p : w.contact_points) out.contact_points.push_back(mirror(p));
  for (const auto& d : w.directions) out.directions.push_back(mirror(d));
  out.tip = mirror(w.tip);
  return out;
}

std::string fmt_m(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v << " m";
  return os.str();
}

// Bisection for a decreasing function crossing zero inside [lo, hi].
double bisect_decreasing(auto&& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
    throw Error(ErrorKind::NoBracket, "no sign change of the wrap condition in [" +
                                          fmt_m(lo) + ", " + fmt_m(hi) + "]");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (std::abs(f_mid) < kAngleTol && hi - lo < kDiameterTol) break;
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace

double RobotGeometry::wingspan() const {
  return rigid_base_width +
         2.0 * std::accumulate(segment_lengths.begin(), segment_lengths.end(), 0.0);
}

void RobotGeometry::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::DomainError, msg); };
  if (!(rigid_base_width > 0.0)) fail("rigid_base_width must be > 0");
  if (segment_lengths.empty()) fail("robot needs at least one folding segment per wing");
  if (segment_lengths.size() != spring_stiffnesses.size()) {
    fail("segment_lengths and spring_stiffnesses must have the same count");
  }
  for (double l : segment_lengths) {
    if (!(l > 0.0) || !std::isfinite(l)) fail("segment lengths must be > 0");
  }
  for (double k : spring_stiffnesses) {
    if (!(k > 0.0) || !std::isfinite(k)) fail("spring stiffnesses must be > 0");
  }
  if (!(body_mass >= 0.0) || !std::isfinite(body_mass)) fail("body_mass must be >= 0");
}

RobotGeometry scaled(const RobotGeometry& robot, double factor) {
  RobotGeometry out = robot;
  out.rigid_base_width *= factor;
  for (double& l : out.segment_lengths) l *= factor;
  return out;
}

void PoleSpec::validate() const {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) {
    throw Error(ErrorKind::DomainError, "pole diameter must be > 0");
  }
  if (!(mu_static >= 0.0) || !std::isfinite(mu_static)) {
    throw Error(ErrorKind::DomainError, "pole mu_static must be >= 0");
  }
}

TangentContact tangent_contact(const Vec2& hinge, const PoleSpec& pole, Side side) {
  const double r = pole.radius();
  const double d = hinge.norm();
  if (d < r * (1.0 - 1e-12)) {
    throw Error(ErrorKind::HingeInsidePole,
                "hinge at distance " + fmt_m(d) + " lies inside the pole (radius " + fmt_m(r) + ")");
  }
  const double sign = side == Side::Right ? 1.0 : -1.0;
  const double phi = std::atan2(hinge.y(), hinge.x());
  const double beta = std::acos(std::min(1.0, r / d));
  const double at = phi + sign * beta;
  TangentContact out;
  out.contact = Vec2(r * std::cos(at), r * std::sin(at));
  // Wrap-direction tangent at the contact point.
  out.direction = sign * Vec2(-std::sin(at), std::cos(at));
  return out;
}

double WrapGeometry::moment_arm(std::size_t hinge, std::size_t segment) const {
  return (right.contact_points.at(segment) - right.hinge_points.at(hinge)).norm();
}

WrapGeometry chain_wrap(const RobotGeometry& robot, const PoleSpec& pole) {
  robot.validate();
  pole.validate();
  const double r = pole.radius();
  const std::size_t n = robot.segments_per_wing();
  const double min_arm = 1e-9 * robot.wingspan();

  WrapGeometry wrap;
  wrap.pole = pole;
  wrap.fuselage_contact = Vec2(0.0, -r);

  WingLayout& w = wrap.right;
  Vec2 hinge(0.5 * robot.rigid_base_width, -r);
  Vec2 prev_dir(1.0, 0.0);
  Vec2 prev_contact = wrap.fuselage_contact;
  double contact_angle = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    const auto tc = tangent_contact(hinge, pole, Side::Right);
    const double arm = (tc.contact - hinge).dot(tc.direction);
    const double len = robot.segment_lengths[i];
    if (arm < min_arm) {
      throw Error(ErrorKind::GeometryInfeasible,
                  "segment " + std::to_string(i + 1) + " hinge lies on the pole; no tangency possible");
    }
    if (len < arm) {
      throw Error(ErrorKind::GeometryInfeasible,
                  "segment " + std::to_string(i + 1) + " (" + fmt_m(len) +
                      ") is too short to reach tangency (needs " + fmt_m(arm) + ")");
    }
    const double fold = signed_angle(prev_dir, tc.direction);
    wrap.fold_angles.push_back(fold);
    wrap.hinge_angles.push_back(kPi - fold);
    contact_angle += signed_angle(prev_contact, tc.contact);

    w.hinge_points.push_back(hinge);
    w.contact_points.push_back(tc.contact);
    w.directions.push_back(tc.direction);
    w.contact_arms.push_back(arm);

    prev_dir = tc.direction;
    prev_contact = tc.contact;
    hinge = hinge + len * tc.direction;
  }
  w.tip = hinge;

  wrap.wrap_angle = 2.0 * contact_angle;
  wrap.tip_angle = 2.0 * (contact_angle + signed_angle(prev_contact, w.tip));
  wrap.left = mirrored(w);
  return wrap;
}

double wrap_angle_at(const RobotGeometry& robot, double diameter) {
  return chain_wrap(robot, PoleSpec{diameter, 0.0, {}}).wrap_angle;
}

double tip_angle_at(const RobotGeometry& robot, double diameter) {
  return chain_wrap(robot, PoleSpec{diameter, 0.0, {}}).tip_angle;
}

DiameterRange diameter_range(const RobotGeometry& robot) {
  robot.validate();
  const double span = robot.wingspan();
  const double lo = kBracketLow * span;
  const double hi = span;
  using AngleFn = double (*)(const RobotGeometry&, double);
  auto guarded = [&robot](AngleFn angle_fn, double target) {
    return [&robot, angle_fn, target](double d) {
      try {
        return angle_fn(robot, d) - target;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DomainError) throw;
        throw Error(ErrorKind::NoBracket, std::string("robot geometry admits no wrap: ") + e.what());
      }
    };
  };
  DiameterRange range;
  range.d_max = bisect_decreasing(guarded(wrap_angle_at, kPi), lo, hi);
  range.d_min = bisect_decreasing(guarded(tip_angle_at, 2.0 * kPi), lo, hi);
  if (!(range.d_min < range.d_max)) {
    throw Error(ErrorKind::NoBracket, "wingtips meet before the wrap reaches half the pole");
  }
  return range;
}

WrapGeometry solve_wrap(const RobotGeometry& robot, const PoleSpec& pole) {
  pole.validate();
  const DiameterRange range = diameter_range(robot);
  const double lower = (1.0 - kNearRangeMargin) * range.d_min;
  const double upper = (1.0 + kNearRangeMargin) * range.d_max;
  if (pole.diameter < lower || pole.diameter > upper) {
    throw Error(ErrorKind::GeometryInfeasible,
                "pole diameter " + fmt_m(pole.diameter) + " is outside the wrappable range [" +
                    fmt_m(range.d_min) + ", " + fmt_m(range.d_max) + "] plus margin");
  }
  WrapGeometry wrap = chain_wrap(robot, pole);
  wrap.near_range = pole.diameter < range.d_min || pole.diameter > range.d_max;
  return wrap;
}

}  // namespace hugperch

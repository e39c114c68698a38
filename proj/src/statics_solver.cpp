#include "hugperch/statics_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hugperch/error.hpp"
#include "hugperch/units.hpp"
#include "parallel.hpp"

namespace hugperch {
namespace {

constexpr double kNormalTol = 1e-12;  // N

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Right-wing outward normal: wrap direction turned by -90 degrees.
Vec2 outward_normal(const Vec2& dir) { return {dir.y(), -dir.x()}; }

std::vector<double> hinge_moments(const WrapGeometry& wrap, const RobotGeometry& robot) {
  std::vector<double> m(robot.segments_per_wing());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = spring_moment(robot.spring_stiffnesses.at(i), wrap.hinge_angles.at(i));
  }
  return m;
}

// Flattened right-wing data for the inner loop of the split search.
class ChainModel {
 public:
  ChainModel(const WrapGeometry& wrap, const RobotGeometry& robot)
      : moments_(hinge_moments(wrap, robot)) {
    const auto& w = wrap.right;
    const std::size_t n = w.hinge_points.size();
    for (std::size_t i = 0; i < n; ++i) {
      hinges_.push_back(w.hinge_points[i]);
      normals_.push_back(outward_normal(w.directions[i]));
      tangents_.push_back(w.directions[i]);
      arms_.push_back(w.contact_arms[i]);
    }
    // Next hinge of the outermost segment is never used (no downstream load).
    for (std::size_t i = 0; i + 1 < n; ++i) spans_.push_back(hinges_[i + 1] - hinges_[i]);
    spans_.push_back(Vec2::Zero());
  }

  std::size_t size() const { return arms_.size(); }

  // Fills normals (right wing) and returns the resultant pole force on the wing.
  Vec2 solve(double mu_t, std::vector<double>& fn, std::vector<Vec2>* reactions = nullptr) const {
    const std::size_t n = size();
    fn.assign(n, 0.0);
    if (reactions) reactions->assign(n, Vec2::Zero());
    Vec2 downstream = Vec2::Zero();
    for (std::size_t k = n; k-- > 0;) {
      const double m_down = k + 1 < n ? moments_[k + 1] : 0.0;
      const double lever = cross(spans_[k], downstream);
      fn[k] = (moments_[k] - m_down + lever) / arms_[k];
      downstream += fn[k] * (normals_[k] + mu_t * tangents_[k]);
      if (reactions) (*reactions)[k] = -downstream;
    }
    return downstream;
  }

  struct Eval {
    bool in_plane_ok = false;
    double capacity_per_mu_v = 0.0;  // total normal force
  };

  Eval evaluate(double mu_t, std::vector<double>& scratch) const {
    const Vec2 wing = solve(mu_t, scratch);
    Eval e;
    const double fn0 = 2.0 * wing.y();
    double total = fn0;
    bool ok = fn0 >= -kNormalTol;
    for (double f : scratch) {
      ok = ok && f >= -kNormalTol;
      total += 2.0 * f;
    }
    e.in_plane_ok = ok;
    e.capacity_per_mu_v = total;
    return e;
  }

 private:
  std::vector<double> moments_;
  std::vector<Vec2> hinges_, normals_, tangents_, spans_;
  std::vector<double> arms_;
};

struct RowResult {
  int first_feasible = -1;  // mobilization index
  double capacity = 0.0;
};

void check_options(const SplitSearchOptions& o) {
  if (o.fraction_steps < 1 || o.mobilization_steps < 1) {
    throw Error(ErrorKind::DomainError, "split search grids need at least one step");
  }
}

}  // namespace

double FrictionSplit::vertical_fraction() const {
  return std::sqrt(std::max(0.0, 1.0 - horizontal_fraction * horizontal_fraction));
}

double spring_moment(double stiffness, double hinge_angle) { return stiffness * hinge_angle; }

FrictionSplit split_coefficients(double mu_total, double horizontal_fraction, double mu_static) {
  if (!(horizontal_fraction >= 0.0 && horizontal_fraction <= 1.0)) {
    throw Error(ErrorKind::DomainError, "horizontal fraction must lie in [0, 1]");
  }
  if (!(mu_total >= 0.0)) throw Error(ErrorKind::DomainError, "friction coefficient must be >= 0");
  FrictionSplit s;
  s.mu_total = mu_total;
  s.horizontal_fraction = horizontal_fraction;
  s.mu_tangential = horizontal_fraction * mu_total;
  s.mu_vertical = mu_total * s.vertical_fraction();
  s.mobilization = mu_static > 0.0 ? mu_total / mu_static : 0.0;
  return s;
}

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::NegativeNormal: return "negative-normal";
    case SolveStatus::InsufficientCapacity: return "insufficient-capacity";
  }
  return "unknown";
}

WingForces solve_chain_unchecked(const WrapGeometry& wrap, const RobotGeometry& robot,
                                 double mu_t) {
  const ChainModel model(wrap, robot);
  WingForces out;
  model.solve(mu_t, out.normal, &out.hinge_reactions);
  out.tangential.resize(out.normal.size());
  for (std::size_t i = 0; i < out.normal.size(); ++i) out.tangential[i] = mu_t * out.normal[i];
  return out;
}

WingForces solve_chain(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_t) {
  WingForces out = solve_chain_unchecked(wrap, robot, mu_t);
  for (std::size_t i = 0; i < out.normal.size(); ++i) {
    if (out.normal[i] < -kNormalTol) {
      std::ostringstream os;
      os << "segment " << i + 1 << " needs a pulling contact force (F_n = " << out.normal[i]
         << " N); it would lift off the pole";
      throw Error(ErrorKind::NegativeNormal, os.str());
    }
  }
  return out;
}

WingForces mirrored(const WingForces& right) {
  WingForces out = right;
  for (auto& r : out.hinge_reactions) r.x() = -r.x();
  return out;
}

FuselageBalance fuselage_equilibrium(const WingForces& right, const WingForces& left,
                                     const WrapGeometry& wrap, const RobotGeometry& robot,
                                     double mu_t) {
  // The base receives the opposite of each wing's root reaction plus the
  // reaction of the root springs.
  const Vec2 c0 = wrap.fuselage_contact;
  Vec2 force = Vec2::Zero();
  double moment = 0.0;
  const double m0 = spring_moment(robot.spring_stiffnesses.at(0), wrap.hinge_angles.at(0));
  if (!right.hinge_reactions.empty()) {
    const Vec2 f = -right.hinge_reactions.front();
    force += f;
    moment += cross(wrap.right.hinge_points.front() - c0, f) - m0;
  }
  if (!left.hinge_reactions.empty()) {
    const Vec2 f = -left.hinge_reactions.front();
    force += f;
    moment += cross(wrap.left.hinge_points.front() - c0, f) + m0;
  }

  FuselageBalance out;
  ContactForce& c = out.contact;
  c.body = BodyId{Side::Right, -1};
  c.application_point = c0;
  c.normal_direction = Vec2(0.0, -1.0);
  c.tangent_direction = Vec2(1.0, 0.0);
  c.normal = force.y();
  c.tangential = -force.x();
  out.moment_residual = moment;
  out.feasible = c.normal >= -kNormalTol && std::abs(c.tangential) <= mu_t * c.normal + 1e-12 &&
                 std::abs(moment) < 1e-9;
  return out;
}

StaticSolution evaluate_split(const WrapGeometry& wrap, const RobotGeometry& robot,
                              const FrictionSplit& split, double weight) {
  const double mu_t = split.mu_tangential;
  const double mu_v = split.mu_vertical;
  const WingForces right = solve_chain_unchecked(wrap, robot, mu_t);
  const WingForces left = mirrored(right);
  const FuselageBalance base = fuselage_equilibrium(right, left, wrap, robot, mu_t);

  StaticSolution s;
  s.wrap = wrap;
  s.split = split;
  s.supported_weight = weight;
  s.spring_moments = hinge_moments(wrap, robot);

  ContactForce fus = base.contact;
  fus.vertical = mu_v * fus.normal;
  s.forces.push_back(fus);

  bool wings_ok = true;
  auto add_wing = [&](const WingForces& wf, const WingLayout& layout, Side side) {
    const double flip = side == Side::Right ? 1.0 : -1.0;
    for (std::size_t i = 0; i < wf.normal.size(); ++i) {
      ContactForce c;
      c.body = BodyId{side, static_cast<int>(i)};
      c.normal = wf.normal[i];
      c.tangential = wf.tangential[i];
      c.vertical = mu_v * wf.normal[i];
      c.application_point = layout.contact_points[i];
      c.tangent_direction = layout.directions[i];
      Vec2 n = outward_normal(layout.directions[i]);
      c.normal_direction = flip * n;
      s.forces.push_back(c);
      wings_ok = wings_ok && wf.normal[i] >= -kNormalTol;
    }
    for (const auto& r : wf.hinge_reactions) s.hinge_reactions.push_back(r);
  };
  add_wing(right, wrap.right, Side::Right);
  add_wing(left, wrap.left, Side::Left);

  double capacity = 0.0;
  for (const auto& c : s.forces) capacity += c.vertical;
  s.vertical_capacity = capacity;
  s.squeeze_force = squeeze_force(s);

  const bool in_plane = wings_ok && base.feasible;
  if (!in_plane) {
    s.status = SolveStatus::NegativeNormal;
  } else if (capacity < weight) {
    s.status = SolveStatus::InsufficientCapacity;
  } else {
    s.status = SolveStatus::Feasible;
  }
  s.feasible = s.status == SolveStatus::Feasible;
  return s;
}

EquilibriumResiduals equilibrium_residuals(const StaticSolution& s, const RobotGeometry& robot) {
  EquilibriumResiduals out;
  const std::size_t n = robot.segments_per_wing();
  const auto& w = s.wrap;
  auto track = [&](const Vec2& f, double m) {
    out.max_force = std::max(out.max_force, f.norm());
    out.max_moment = std::max(out.max_moment, std::abs(m));
  };
  const auto& contact_of = [&](Side side, std::size_t i) -> const ContactForce& {
    return s.forces.at(1 + (side == Side::Right ? 0 : n) + i);
  };
  Vec2 base_force = s.fuselage().in_plane();
  double base_moment = 0.0;
  const Vec2 c0 = s.fuselage().application_point;

  for (Side side : {Side::Right, Side::Left}) {
    const WingLayout& layout = side == Side::Right ? w.right : w.left;
    const double spin = side == Side::Right ? 1.0 : -1.0;
    const std::size_t off = side == Side::Right ? 0 : n;
    for (std::size_t i = 0; i < n; ++i) {
      const ContactForce& c = contact_of(side, i);
      const Vec2 root = s.hinge_reactions.at(off + i);
      const Vec2 tip_load = i + 1 < n ? Vec2(-s.hinge_reactions.at(off + i + 1)) : Vec2::Zero();
      const double m_down = i + 1 < n ? s.spring_moments.at(i + 1) : 0.0;
      const Vec2 h = layout.hinge_points[i];
      Vec2 f = c.in_plane() + root + tip_load;
      double m = spin * (s.spring_moments.at(i) - m_down) + cross(c.application_point - h, c.in_plane());
      if (i + 1 < n) m += cross(layout.hinge_points[i + 1] - h, tip_load);
      track(f, m);
    }
    const Vec2 on_base = -s.hinge_reactions.at(off);
    base_force += on_base;
    base_moment += cross(layout.hinge_points.front() - c0, on_base) - spin * s.spring_moments.at(0);
  }
  track(base_force, base_moment);
  return out;
}

SplitSearchOptions SplitSearchOptions::from_step_percent(double step_percent, bool parallel) {
  if (!(step_percent > 0.0 && step_percent <= 100.0)) {
    throw Error(ErrorKind::DomainError, "grid step must lie in (0, 100] percent");
  }
  const int steps = static_cast<int>(std::lround(100.0 / step_percent));
  SplitSearchOptions o;
  o.fraction_steps = std::max(1, steps);
  o.mobilization_steps = std::max(1, steps);
  o.parallel = parallel;
  return o;
}

StaticSolution find_min_friction_split(const WrapGeometry& wrap, const RobotGeometry& robot,
                                       double weight, const SplitSearchOptions& options) {
  check_options(options);
  if (!(weight >= 0.0)) throw Error(ErrorKind::DomainError, "weight must be >= 0");
  const ChainModel model(wrap, robot);
  const double mu_s = wrap.pole.mu_static;
  const int nf = options.fraction_steps;
  const int nm = options.mobilization_steps;

  std::vector<RowResult> rows(nf + 1);
  detail::for_each_index(nf + 1, options.parallel, [&](int i) {
    std::vector<double> scratch;
    const double fh = static_cast<double>(i) / nf;
    const double vfrac = std::sqrt(std::max(0.0, 1.0 - fh * fh));
    for (int j = 0; j <= nm; ++j) {
      const double mu = mu_s * static_cast<double>(j) / nm;
      const auto e = model.evaluate(fh * mu, scratch);
      const double cap = mu * vfrac * e.capacity_per_mu_v;
      if (e.in_plane_ok && cap >= weight) {
        rows[i] = RowResult{j, cap};
        return;
      }
    }
  });

  int best = -1;
  for (int i = 0; i <= nf; ++i) {
    const RowResult& r = rows[i];
    if (r.first_feasible < 0) continue;
    if (best < 0) {
      best = i;
      continue;
    }
    const RowResult& b = rows[best];
    if (r.first_feasible < b.first_feasible ||
        (r.first_feasible == b.first_feasible && r.capacity > b.capacity)) {
      best = i;
    }
  }

  if (best >= 0) {
    const double fh = static_cast<double>(best) / nf;
    const double mu = mu_s * static_cast<double>(rows[best].first_feasible) / nm;
    return evaluate_split(wrap, robot, split_coefficients(mu, fh, mu_s), weight);
  }

  // No feasible pair: report the most capable in-plane equilibrium at mu_s,
  // or the fully in-plane split when none keeps every contact pressed.
  std::vector<double> scratch;
  int fallback = nf;
  double best_cap = -1.0;
  for (int i = 0; i <= nf; ++i) {
    const double fh = static_cast<double>(i) / nf;
    const auto e = model.evaluate(fh * mu_s, scratch);
    const double cap = mu_s * std::sqrt(std::max(0.0, 1.0 - fh * fh)) * e.capacity_per_mu_v;
    if (e.in_plane_ok && cap > best_cap) {
      best_cap = cap;
      fallback = i;
    }
  }
  return evaluate_split(wrap, robot,
                        split_coefficients(mu_s, static_cast<double>(fallback) / nf, mu_s), weight);
}

double max_vertical_capacity(const WrapGeometry& wrap, const RobotGeometry& robot,
                             const SplitSearchOptions& options) {
  check_options(options);
  const ChainModel model(wrap, robot);
  const double mu_s = wrap.pole.mu_static;
  const int nf = options.fraction_steps;
  const int nm = options.mobilization_steps;
  std::vector<double> row_best(nf + 1, 0.0);
  detail::for_each_index(nf + 1, options.parallel, [&](int i) {
    std::vector<double> scratch;
    const double fh = static_cast<double>(i) / nf;
    const double vfrac = std::sqrt(std::max(0.0, 1.0 - fh * fh));
    double best = 0.0;
    for (int j = 0; j <= nm; ++j) {
      const double mu = mu_s * static_cast<double>(j) / nm;
      const auto e = model.evaluate(fh * mu, scratch);
      if (e.in_plane_ok) best = std::max(best, mu * vfrac * e.capacity_per_mu_v);
    }
    row_best[i] = best;
  });
  return *std::max_element(row_best.begin(), row_best.end());
}

double max_payload(const RobotGeometry& robot, const PoleSpec& pole,
                   const SplitSearchOptions& options) {
  const WrapGeometry wrap = solve_wrap(robot, pole);
  // Feasibility of a weight W is exactly "some grid split carries W", so the
  // bisection predicate only needs the capacity envelope.
  const double capacity = max_vertical_capacity(wrap, robot, options);
  auto holds = [&](double payload) {
    return capacity >= (robot.body_mass + payload) * kGravity;
  };
  if (!holds(0.0)) return 0.0;
  double lo = 0.0;
  double hi = kPayloadSearchFactor * std::max(robot.body_mass, 0.01);
  if (holds(hi)) return hi;
  while (hi - lo > kPayloadResolution) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::optional<double> min_grip_friction(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_cap) {
  auto holds = [&](double mu) { return evaluate_split(wrap, robot, split_coefficients(mu, 1.0), 0.0).feasible; };
  if (!(mu_cap >= 0.0)) throw Error(ErrorKind::DomainError, "friction cap must be >= 0");
  if (holds(0.0)) return 0.0;
  constexpr double kScan = 1e-3;
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; lo < mu_cap; ++k) {
    const double mu = std::min(k * kScan, mu_cap);
    if (holds(mu)) {
      hi = mu;
      break;
    }
    lo = mu;
  }
  if (hi < 0.0) return std::nullopt;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<StaticSolution> unloaded_grip(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_cap) {
  const auto mu = min_grip_friction(wrap, robot, mu_cap);
  if (!mu) return std::nullopt;
  return evaluate_split(wrap, robot, split_coefficients(*mu, 1.0, mu_cap), 0.0);
}

double squeeze_force(const StaticSolution& solution) {
  double sum = 0.0;
  for (const auto& c : solution.forces) {
    if (!c.body.is_fuselage()) sum += std::abs(c.normal);
  }
  return sum;
}

}  // namespace hugperch

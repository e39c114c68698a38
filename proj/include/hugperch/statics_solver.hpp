#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hugperch/wrap_geometry.hpp"

namespace hugperch {

/// Decomposition of the mobilised friction coefficient into an in-plane
/// (tangential) and an axial (vertical) part, mu_t^2 + mu_v^2 = mu^2.
struct FrictionSplit {
  double mu_total = 0.0;
  double mu_tangential = 0.0;
  double mu_vertical = 0.0;
  double horizontal_fraction = 0.0;  // mu_t / mu
  double mobilization = 0.0;         // mu / mu_s

  /// F_v / F_f at every contact.
  double vertical_fraction() const;
};

double spring_moment(double stiffness, double hinge_angle);

/// Throws DomainError when horizontal_fraction is outside [0, 1] or mu < 0.
/// `mu_static` only feeds the mobilization field (0 when mu_static == 0).
FrictionSplit split_coefficients(double mu_total, double horizontal_fraction,
                                 double mu_static = 0.0);

struct BodyId {
  Side side = Side::Right;
  int segment = -1;  // -1: fuselage (rigid base), otherwise moving segment index

  bool is_fuselage() const { return segment < 0; }
  bool operator==(const BodyId&) const = default;
};

struct ContactForce {
  BodyId body;
  double normal = 0.0;      // N, pole pushing the robot outward
  double tangential = 0.0;  // N, in-plane, signed along tangent_direction
  double vertical = 0.0;    // N, along the pole axis, carries the weight
  Vec2 application_point = Vec2::Zero();
  Vec2 normal_direction = Vec2::Zero();
  Vec2 tangent_direction = Vec2::Zero();

  Vec2 in_plane() const { return normal * normal_direction + tangential * tangent_direction; }
};

/// Solved forces of one wing, innermost segment first.
struct WingForces {
  std::vector<double> normal;
  std::vector<double> tangential;
  /// Force on segment i from the body upstream of hinge i.
  std::vector<Vec2> hinge_reactions;
};

/// Outermost-first moment recursion on the right wing. In-plane friction on
/// every segment points along the wrap direction, F_t = mu_t * F_n.
/// Throws NegativeNormal if any segment needs a pulling contact force.
WingForces solve_chain(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_t);

/// Same recursion, reporting negative normals instead of throwing.
WingForces solve_chain_unchecked(const WrapGeometry& wrap, const RobotGeometry& robot,
                                 double mu_t);

/// Mirror image of right-wing forces onto the left wing.
WingForces mirrored(const WingForces& right);

struct FuselageBalance {
  ContactForce contact;
  /// Out-of-balance moment of the base about its contact point (N·m); the
  /// two force components are solved exactly.
  double moment_residual = 0.0;
  bool feasible = false;
};

FuselageBalance fuselage_equilibrium(const WingForces& right, const WingForces& left,
                                     const WrapGeometry& wrap, const RobotGeometry& robot,
                                     double mu_t);

enum class SolveStatus {
  Feasible,
  NegativeNormal,        // no split gives an all-touching in-plane equilibrium
  InsufficientCapacity,  // in-plane equilibrium exists but vertical friction < W
};

std::string_view to_string(SolveStatus status) noexcept;

struct EquilibriumResiduals {
  double max_force = 0.0;   // N, over all bodies
  double max_moment = 0.0;  // N·m, over all bodies
};

struct StaticSolution {
  WrapGeometry wrap;
  FrictionSplit split;
  std::vector<ContactForce> forces;      // fuselage, right segments, left segments
  std::vector<Vec2> hinge_reactions;     // right hinges then left hinges
  std::vector<double> spring_moments;    // per hinge (same both wings)
  double squeeze_force = 0.0;
  double vertical_capacity = 0.0;
  double supported_weight = 0.0;
  bool feasible = false;
  SolveStatus status = SolveStatus::NegativeNormal;

  const ContactForce& fuselage() const { return forces.front(); }
};

/// Builds the full solution for one (mu_t, mu_v) pair without searching.
StaticSolution evaluate_split(const WrapGeometry& wrap, const RobotGeometry& robot,
                              const FrictionSplit& split, double weight);

/// Plugs the stored forces back into every body's planar force and moment
/// balance.
EquilibriumResiduals equilibrium_residuals(const StaticSolution& solution,
                                           const RobotGeometry& robot);

struct SplitSearchOptions {
  int fraction_steps = 200;      // horizontal_fraction grid: 0.5 %
  int mobilization_steps = 200;  // mu / mu_s grid: 0.5 %
  bool parallel = false;

  /// Both grids from a step in percent (0.5 -> 200 steps).
  static SplitSearchOptions from_step_percent(double step_percent, bool parallel = false);
};

/// Nested sweep over horizontal fraction (outer) and mobilization (inner,
/// stopping at the first feasible value); returns the feasible pair with the
/// smallest mu, ties resolved by the larger vertical capacity, then the smaller
/// fraction.
StaticSolution find_min_friction_split(const WrapGeometry& wrap, const RobotGeometry& robot,
                                       double weight, const SplitSearchOptions& options = {});

/// Largest vertical friction force any grid split can carry while keeping all
/// contacts pressed (0 when none can).
double max_vertical_capacity(const WrapGeometry& wrap, const RobotGeometry& robot,
                             const SplitSearchOptions& options = {});

inline constexpr double kPayloadResolution = 1e-3;  // kg
inline constexpr double kPayloadSearchFactor = 100.0;

/// Added mass the perched robot holds, bisected to 1 g.
double max_payload(const RobotGeometry& robot, const PoleSpec& pole,
                   const SplitSearchOptions& options = {});

/// Smallest in-plane friction coefficient that keeps every contact pressed with
/// no load, bracketed on a 0.001 scan and bisected to 1e-12; nullopt when
/// nothing up to `mu_cap` works.
std::optional<double> min_grip_friction(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_cap);

/// Unloaded grip at min_grip_friction (all friction in-plane).
std::optional<StaticSolution> unloaded_grip(const WrapGeometry& wrap, const RobotGeometry& robot, double mu_cap);

/// Sum of the moving segments' normal forces over both wings.
double squeeze_force(const StaticSolution& solution);

}  // namespace hugperch

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace hugperch {

using Vec2 = Eigen::Vector2d;

/// Planar description of a symmetric hugging-wing robot.
///
/// The fuselage and the two fixed wing roots form one rigid body of width
/// `rigid_base_width`. Each wing continues with `segments_per_wing()` folding
/// segments, innermost first, joined by torsion-spring hinges. The first
/// spring sits at the end of the rigid base.
struct RobotGeometry {
  double rigid_base_width = 0.0;            // m
  std::vector<double> segment_lengths;      // m, innermost first
  std::vector<double> spring_stiffnesses;   // N·m/rad, one per hinge
  double body_mass = 0.0;                   // kg

  std::size_t segments_per_wing() const { return segment_lengths.size(); }
  double wingspan() const;

  /// Throws Error{DomainError} when a field violates its invariant.
  void validate() const;

  bool operator==(const RobotGeometry&) const = default;
};

/// Uniformly scaled copy (lengths only; stiffness and mass untouched).
RobotGeometry scaled(const RobotGeometry& robot, double factor);

struct PoleSpec {
  double diameter = 0.0;   // m
  double mu_static = 0.0;  // static friction coefficient
  std::string label;

  double radius() const { return 0.5 * diameter; }
  void validate() const;

  bool operator==(const PoleSpec&) const = default;
};

enum class Side { Right, Left };

struct TangentContact {
  Vec2 contact;
  Vec2 direction;  // unit vector from the hinge toward (and past) the contact
};

/// Tangent from an external hinge point to the pole circle (centred at the
/// origin). The right wing wraps counter-clockwise, the left clockwise.
TangentContact tangent_contact(const Vec2& hinge, const PoleSpec& pole, Side side);

/// One wing of a solved wrap. Index i refers to moving segment i, innermost
/// first; hinge i is the joint at the root of segment i.
struct WingLayout {
  std::vector<Vec2> hinge_points;
  std::vector<Vec2> contact_points;
  std::vector<Vec2> directions;      // segment axis, root to tip
  std::vector<double> contact_arms;  // l_{i,i}: hinge i to contact i
  Vec2 tip;
};

struct WrapGeometry {
  PoleSpec pole;
  Vec2 fuselage_contact;  // lowest point of the circle
  WingLayout right;
  WingLayout left;        // mirror image of `right` in x

  /// Fold between consecutive segment axes, 0 = straight wing.
  std::vector<double> fold_angles;
  /// Spring deflection per hinge, measured as the opening between the two
  /// segments: pi - fold. A flat wing fully loads the spring, a closed one
  /// unloads it.
  std::vector<double> hinge_angles;

  /// Central angle between the two outermost contact points, through the
  /// fuselage side.
  double wrap_angle = 0.0;
  /// Central angle spanned by the two physical wingtips. Reaches 2*pi when
  /// the tips meet.
  double tip_angle = 0.0;

  /// Diameter lies outside [d_min, d_max] but within the accepted margin.
  bool near_range = false;

  /// Moment arm from hinge i to the contact point of downstream segment j
  /// (l_{i,j}); i == j gives contact_arms[i].
  double moment_arm(std::size_t hinge, std::size_t segment) const;
};

/// Chains the wing around the pole without checking the admissible range.
/// Throws GeometryInfeasible when a segment cannot reach tangency.
WrapGeometry chain_wrap(const RobotGeometry& robot, const PoleSpec& pole);

struct DiameterRange {
  double d_min = 0.0;
  double d_max = 0.0;
};

/// Relative margin around [d_min, d_max] that solve_wrap still accepts.
inline constexpr double kNearRangeMargin = 0.10;

WrapGeometry solve_wrap(const RobotGeometry& robot, const PoleSpec& pole);

/// d_max: wrap_angle == pi. d_min: tip_angle == 2*pi (wingtips meet).
DiameterRange diameter_range(const RobotGeometry& robot);

/// Wrap and tip angles as functions of diameter; exposed for bracketing
/// and plotting.
double wrap_angle_at(const RobotGeometry& robot, double diameter);
double tip_angle_at(const RobotGeometry& robot, double diameter);

}  // namespace hugperch

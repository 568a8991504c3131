#pragma once

// Fuchsian groups handled by the library: PSL2(Z) and the surface groups of
// the standard regular 4g-gon (interior angle pi/2g, centered at i).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geocover/hyperbolic.hpp"

namespace geocover {

enum class GroupKind { Modular, RegularGenus };

enum class Region { Interior, Boundary, Outside };

inline constexpr double kBoundaryTol = 1e-9;
inline constexpr int kMaxGenus = 16;

/// Derived constants and side pairings of the regular 4g-gon.
///
/// Sides are s_k = (v_k, v_{k+1 mod 4g}) in counterclockwise order.  Within
/// each block of four sides 4m..4m+3, side 4m is glued to 4m+2 and 4m+1 to
/// 4m+3, orientation reversed.  pair_maps[2m] carries side 4m onto side 4m+2
/// and pair_maps[2m+1] carries side 4m+1 onto side 4m+3; with
/// a_m = pair_maps[2m]^-1 and b_m = pair_maps[2m+1] the surface relator is
/// [a_1, b_1] ... [a_g, b_g] = 1.
struct PolygonData {
  int g = 0;
  double beta = 0.0;           // pi / 4g
  double vertex_radius = 0.0;  // acosh(cot^2 beta), center to vertex
  double edge_radius = 0.0;    // acosh(cot beta), center to side midpoint
  double diam_bound = 0.0;     // acosh(2 cot^2 beta - 1) >= diam(Y_g)
  std::vector<DiskPoint> vertices;
  std::vector<int> pairing;  // involution on side indices
  std::vector<Isometry> pair_maps;

  int sides() const { return 4 * g; }
  UhpPoint vertex(int k) const;

  /// Isometry mapping side k onto side pairing[k], endpoints swapped.
  Isometry side_map(int k) const;

  Isometry a(int m) const;
  Isometry b(int m) const;
  /// [a_1, b_1] ... [a_g, b_g], sign normalized.
  Isometry relator_product() const;

  double interior_angle(int k) const;
};

class FuchsianGroup {
 public:
  GroupKind kind() const { return kind_; }
  int genus() const { return genus_; }
  bool is_modular() const { return kind_ == GroupKind::Modular; }

  /// Closed under inverses.  Modular: {T, T^-1, S}.  RegularGenus: the 2g
  /// pair maps followed by their inverses.
  const std::vector<Isometry>& generators() const { return generators_; }

  const std::optional<PolygonData>& polygon() const { return polygon_; }
  const PolygonData& polygon_data() const;

  /// Images of i under the generators (centers of the neighbouring tiles).
  const std::vector<UhpPoint>& neighbor_centers() const { return neighbor_centers_; }

  /// "modular" or "genus:<g>".
  std::string label() const;

  double max_generator_norm() const;

 private:
  FuchsianGroup() = default;

  GroupKind kind_ = GroupKind::Modular;
  int genus_ = 0;
  std::vector<Isometry> generators_;
  std::optional<PolygonData> polygon_;
  std::vector<UhpPoint> neighbor_centers_;

  friend std::shared_ptr<const FuchsianGroup> build_modular();
  friend std::shared_ptr<const FuchsianGroup> build_regular_genus(int g);
};

using GroupPtr = std::shared_ptr<const FuchsianGroup>;

GroupPtr build_modular();

/// Builds the regular 4g-gon group for 2 <= g <= 16 and verifies the
/// polygon invariants (angles, pairing, relator, vertex cycle); throws
/// InvariantError if any check fails.
GroupPtr build_regular_genus(int g);

/// Parses "modular" or "genus:<g>".
GroupPtr build_group(const std::string& label);

/// Closure of the strip |Re z| < 1/2, |z| > 1 with a 1e-9 boundary band.
Region in_fundamental_modular(const UhpPoint& p);

/// Membership in the regular polygon, using that its sides are the
/// perpendicular bisectors between i and the neighbouring tile centers.
Region in_fundamental_polygon(const UhpPoint& p, const FuchsianGroup& grp);

Region in_fundamental(const UhpPoint& p, const FuchsianGroup& grp);

struct Reduction {
  UhpPoint point;
  Isometry gamma;  // point = apply(gamma, input)
};

/// Moves p into the closed fundamental domain.  Boundary points are
/// normalized to the equivalent boundary representative with
/// lexicographically smallest (x, y).
Reduction reduce_to_fundamental(const UhpPoint& p, const FuchsianGroup& grp);

// ---------------------------------------------------------------------------
// Group balls

enum class FrontierPolicy {
  // Frontier capped at 1.01 R.  Complete because the fundamental domains are
  // Dirichlet domains centered at i: every non-identity element has a
  // generator neighbour strictly closer to i (modular: the column Euclidean
  // algorithm never increases the norm).
  Descent,
  // Frontier capped at 1.01 R max||h||, the submultiplicative bound.
  Submultiplicative,
};

struct BallEnumeration {
  double radius = 0.0;  // Frobenius cap R
  double depth = 0.0;   // acosh(R^2 / 2)
  std::vector<Isometry> elements;
  bool exact = false;
};

inline constexpr double kModularBallCap = 1e6;  // max R^2, modular
inline constexpr double kGenusBallCap = 1e7;    // max R^2, surface groups

/// All group elements with ||g|| <= R, sorted by canonical_less.
BallEnumeration enumerate_ball(const FuchsianGroup& grp, double R,
                               FrontierPolicy policy = FrontierPolicy::Descent);

struct LatticeRow {
  double R = 0.0;
  std::size_t count = 0;
  double ratio = 0.0;  // count / R^2
};

std::vector<LatticeRow> lattice_count_table(const FuchsianGroup& grp,
                                            const std::vector<double>& R_values);

/// Counts from an existing ball (R_values must not exceed ball.radius).
std::vector<LatticeRow> lattice_count_table(const BallEnumeration& ball,
                                            const std::vector<double>& R_values);

/// Surface-group elements gamma with d(center, gamma i) <= radius, found by a
/// breadth-first walk over adjacent tiles.  Requires center in the closed
/// fundamental polygon and radius >= vertex_radius.
std::vector<Isometry> tiles_near(const FuchsianGroup& grp, const UhpPoint& center,
                                 double radius);

/// Minimum Frobenius distance between distinct elements of the ball.
double min_separation(const BallEnumeration& ball);

}  // namespace geocover

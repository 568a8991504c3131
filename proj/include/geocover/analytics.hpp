#pragma once

// Distinct-distance statistics of finite point sets in the hyperbolic plane
// or on a quotient surface, and the equilateral packing experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geocover/cover.hpp"

namespace geocover {

enum class SurfaceKind { Plane, Modular, RegularGenus };

/// A surface together with its group (null for the plane).
struct Surface {
  SurfaceKind kind = SurfaceKind::Plane;
  GroupPtr group;

  static Surface plane();
  static Surface of(GroupPtr grp);
  /// "plane", "modular" or "genus:<g>".
  static Surface parse(const std::string& label);
  std::string label() const;
};

struct PointSet {
  Surface surface;
  std::vector<UhpPoint> points;
  std::string label;
};

/// Throws PreconditionError unless every point lies in the closed
/// fundamental domain (non-plane surfaces).
void validate_point_set(const PointSet& P);

inline constexpr double kDefaultEpsEq = 1e-9;

struct DistanceStats {
  std::size_t n_points = 0;
  std::size_t m = 0;
  std::vector<double> values;                  // smallest member of each cluster
  std::vector<std::uint64_t> multiplicities;   // ordered-pair counts n_i
  std::uint64_t sum_n = 0;                     // N^2 - N
  std::uint64_t quadruples = 0;                // |Q(P)| = sum n_i^2
  double cs_lower_bound = 0.0;                 // (N^4 - 2 N^3) / |Q(P)|
  std::optional<double> thm_bound;             // N / (K^3 ln(K N)), constant set to 1
  double eps_eq = kDefaultEpsEq;
};

/// m |Q| >= (sum n_i)^2, checked in exact integer arithmetic.
bool cauchy_schwarz_holds(std::uint64_t m, std::uint64_t quadruples, std::uint64_t sum_n);

/// Sorted unordered pair distances (surface distance through the cover when
/// the surface is not the plane).  Throws PreconditionError on coincident
/// points.
std::vector<double> pair_distances(const PointSet& P, const GeodesicCover* cover,
                                   unsigned threads = 1);

struct Clusters {
  std::vector<double> values;
  std::vector<std::uint64_t> counts;
};

/// Adjacent-gap clustering of sorted values: a new cluster starts when the
/// gap to the previous value is >= eps.
Clusters cluster_sorted(const std::vector<double>& sorted, double eps);

DistanceStats distance_stats(const PointSet& P, const GeodesicCover* cover,
                             double eps_eq = kDefaultEpsEq, unsigned threads = 1);

/// Stats from precomputed sorted unordered distances.
DistanceStats stats_from_distances(std::size_t n_points, const std::vector<double>& sorted,
                                   double eps_eq, std::optional<std::size_t> cover_size);

struct CrossStats {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t intersection = 0;
  std::size_t m_cross = 0;
  std::vector<double> values;
  std::vector<std::uint64_t> multiplicities;
  std::uint64_t sum_n = 0;            // n1 n2 - |P1 cap P2|
  std::uint64_t quadruples_cross = 0;
  std::optional<double> bound;        // n1^2 n2^2 / (U^3 ln U), U = |P1 cup P2| >= 2
};

CrossStats cross_stats(const PointSet& P1, const PointSet& P2, const GeodesicCover* cover,
                       double eps_eq = kDefaultEpsEq);

enum class PointKind { AreaUniform, GeodesicProgression, OrbitSample };

struct GenerateOptions {
  double spacing = 0.69314718055994530942;  // progression step h (ln 2)
  UhpPoint z0{0.1, 1.3};                     // orbit base point
  std::vector<Isometry> orbit_elements;      // orbit sample elements
  double plane_radius = 3.0;                 // area-uniform disk around i (plane)
};

/// Deterministic for a fixed seed.  Throws CapExceeded when area-uniform or
/// progression points collide after reduction.
PointSet generate_points(PointKind kind, const Surface& surface, std::size_t count,
                         std::uint64_t seed, const GenerateOptions& options = {});

struct QpRow {
  std::size_t n = 0;
  std::uint64_t quadruples = 0;
  double ratio = 0.0;  // |Q| / (N^3 ln N)
  std::size_t m = 0;
  double cs_lower_bound = 0.0;
  bool stable = false;  // m unchanged when eps_eq is halved
  std::size_t m_half = 0;
};

std::vector<QpRow> qp_scaling_experiment(const GeodesicCover& cover,
                                         const std::vector<std::size_t>& n_values,
                                         std::uint64_t seed, double eps_eq = kDefaultEpsEq,
                                         unsigned threads = 1);

struct EquilateralOptions {
  std::size_t circle_candidates = 200;
  std::size_t general_candidates = 600;
};

struct EquilateralReport {
  int g = 0;
  double r = 0.0;
  std::size_t found = 0;      // best packing size over all attempts
  std::size_t on_circle = 0;  // most points kept in any circle phase (seed excluded)
  double alpha_min = 0.0;     // 2 asin(1 / (2 cosh(r/2)))
  std::size_t circle_cap = 0; // floor(2 pi / alpha_min)
  std::vector<UhpPoint> points;  // best packing
};

/// 2 asin(1 / (2 cosh(r / 2))), the least angle between circle
/// representatives at mutual distance >= r.
double equilateral_alpha_min(double r);
std::size_t equilateral_circle_cap(double alpha_min);

/// Greedy ">= r" packing on the regular genus-g surface.
EquilateralReport equilateral_greedy(int g, double r, std::size_t attempts, std::uint64_t seed,
                                     const EquilateralOptions& options = {});

}  // namespace geocover

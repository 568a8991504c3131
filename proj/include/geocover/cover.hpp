#pragma once

// Geodesic covers: finite sets Gamma0 of group elements such that for any
// two points p, q of the fundamental domain the surface distance is
// min over gamma in Gamma0 of d(p, gamma q).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geocover/fuchsian.hpp"

namespace geocover {

enum class CoverMethod { PaperModularTen, BallRadiusBound, Explicit };

std::string to_string(CoverMethod m);
CoverMethod cover_method_from_string(const std::string& s);

struct CoverSearchBounds {
  double normsq_cap = 0.0;    // 2 cosh(2 vertex_radius + diam_bound); genus covers
  std::optional<double> u0;   // modular threshold U(0), when tied to a point pair
};

/// U(0) = y2/y1 + 1/(4 y1 y2) + y1/y2: the c = 0, |b| <= 1 norm bound.
double modular_u0(double y1, double y2);

/// 2 cosh(2 vertex_radius + diam_bound) for the regular genus-g polygon.
double genus_normsq_cap(const PolygonData& poly);

/// Same cap through the expanded product formula in cot^2 beta.
double genus_normsq_cap_closed_form(double beta);

struct GeodesicCover {
  GroupPtr surface;
  std::vector<Isometry> gamma0;
  CoverMethod method = CoverMethod::Explicit;
  std::optional<CoverSearchBounds> bound_used;
  std::optional<std::vector<Isometry>> radical;
};

/// Validates identity membership and absence of duplicates.
void validate_cover(const GeodesicCover& cover);

/// Elements of gamma0 that are not r1^-1 r2 for any radical r1, r2 (empty
/// when there is no radical set).
std::vector<Isometry> radical_missing(const GeodesicCover& cover);

/// Arbitrary element list; the identity is added when missing.
GeodesicCover make_explicit_cover(GroupPtr surface, std::vector<Isometry> elements);

/// The ten-element cover of PSL2(Z) with its four-element radical set
/// {1, T, L, S}.
GeodesicCover modular_cover_paper();

/// Group ball of norm^2 <= genus_normsq_cap for 2 <= g <= 5.
GeodesicCover build_cover_genus(int g);

struct CoverDistance {
  double distance = 0.0;
  std::vector<std::size_t> argmins;  // indices into gamma0 within 1e-9 of the min
};

/// Requires p and q to be in the closed fundamental domain.
CoverDistance surface_distance_detail(const UhpPoint& p, const UhpPoint& q,
                                      const GeodesicCover& cover);
double surface_distance(const UhpPoint& p, const UhpPoint& q, const GeodesicCover& cover);

/// Unchecked inner loop of surface_distance, for callers that validated
/// their points up front.
double surface_distance_unchecked(const UhpPoint& p, const UhpPoint& q,
                                  const GeodesicCover& cover);

struct OracleResult {
  double distance = 0.0;
  Isometry gamma;
};

/// Exact minimum of d(p, gamma q) over all of PSL2(Z), independent of any
/// cover.  Candidates are pruned with the lower bound c^2 y1 y2 and the two
/// square terms of the norm expansion, under a cap 1.5 x 2 cosh d(p, q).
OracleResult brute_force_modular(const UhpPoint& p, const UhpPoint& q);

/// Minimum over a surface-group ball whose norm is `inflate` times the
/// genus cover's norm.
class BallOracle {
 public:
  BallOracle(GroupPtr grp, double inflate);
  double distance(const UhpPoint& p, const UhpPoint& q) const;
  std::size_t size() const { return ball_.elements.size(); }
  const BallEnumeration& ball() const { return ball_; }

 private:
  GroupPtr grp_;
  BallEnumeration ball_;
};

double brute_force_ball(const UhpPoint& p, const UhpPoint& q, GroupPtr grp, double inflate);

/// Surface distance for a surface group without any global cover: minimum
/// over the tiles within d(p, q) + vertex_radius of p.
double surface_distance_local(const UhpPoint& p, const UhpPoint& q, const FuchsianGroup& grp);

struct VerifyOptions {
  double boundary_fraction = 0.1;
  double inflate = 1.5;
  unsigned threads = 1;
};

struct SamplePair {
  UhpPoint p;
  UhpPoint q;
};

struct VerifyReport {
  std::size_t samples = 0;
  double max_abs_gap = 0.0;
  std::optional<SamplePair> worst_pair;
  double worst_cover_distance = 0.0;
  double worst_oracle_distance = 0.0;
  std::vector<Isometry> used_elements;  // canonical order
};

/// Deterministic sample pairs used by verify_cover.
std::vector<SamplePair> verification_pairs(const FuchsianGroup& grp, std::size_t n,
                                           std::uint64_t seed, double boundary_fraction);

VerifyReport verify_cover(const GeodesicCover& cover, std::size_t n_samples, std::uint64_t seed,
                          const VerifyOptions& options = {});

}  // namespace geocover

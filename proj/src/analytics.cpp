#include "geocover/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "geocover/error.hpp"
#include "geocover/parallel.hpp"
#include "geocover/sampling.hpp"

namespace geocover {

namespace {

constexpr double kCoincident = 1e-9;

using u128 = unsigned __int128;

double point_distance(const UhpPoint& p, const UhpPoint& q, const GeodesicCover* cover) {
  return cover ? surface_distance_unchecked(p, q, *cover) : distance_uhp(p, q);
}

void require_cover(const Surface& s, const GeodesicCover* cover) {
  if (s.kind == SurfaceKind::Plane) {
    if (cover) throw PreconditionError("plane point sets take no cover");
    return;
  }
  if (!cover) throw PreconditionError("surface point sets need a geodesic cover");
  if (cover->surface->label() != s.label())
    throw PreconditionError("cover surface does not match the point set surface");
}

void require_distinct(const std::vector<UhpPoint>& pts, const Surface& s) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (distance_uhp(pts[i], pts[j]) <= kCoincident)
        throw CapExceeded("generated points collide after reduction (" + s.label() + ")");
}

}  // namespace

Surface Surface::plane() { return {}; }

Surface Surface::of(GroupPtr grp) {
  Surface s;
  s.kind = grp->is_modular() ? SurfaceKind::Modular : SurfaceKind::RegularGenus;
  s.group = std::move(grp);
  return s;
}

Surface Surface::parse(const std::string& label) {
  if (label == "plane") return plane();
  return of(build_group(label));
}

std::string Surface::label() const { return group ? group->label() : "plane"; }

void validate_point_set(const PointSet& P) {
  if (P.surface.kind == SurfaceKind::Plane) return;
  for (const auto& p : P.points)
    if (in_fundamental(p, *P.surface.group) == Region::Outside)
      throw PreconditionError("point set contains an unreduced point");
}

bool cauchy_schwarz_holds(std::uint64_t m, std::uint64_t quadruples, std::uint64_t sum_n) {
  return static_cast<u128>(m) * quadruples >= static_cast<u128>(sum_n) * sum_n;
}

std::vector<double> pair_distances(const PointSet& P, const GeodesicCover* cover,
                                   unsigned threads) {
  require_cover(P.surface, cover);
  validate_point_set(P);
  const std::size_t n = P.points.size();
  std::vector<double> out(n * (n - 1) / 2);
  parallel_for(n, threads, [&](std::size_t i) {
    std::size_t offset = i * (2 * n - i - 1) / 2;
    for (std::size_t j = i + 1; j < n; ++j)
      out[offset++] = point_distance(P.points[i], P.points[j], cover);
  });
  std::sort(out.begin(), out.end());
  if (!out.empty() && out.front() <= kCoincident)
    throw PreconditionError("point set contains coincident points");
  return out;
}

Clusters cluster_sorted(const std::vector<double>& sorted, double eps) {
  Clusters c;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] - sorted[i - 1] >= eps) {
      c.values.push_back(sorted[i]);
      c.counts.push_back(0);
    }
    ++c.counts.back();
  }
  return c;
}

DistanceStats stats_from_distances(std::size_t n_points, const std::vector<double>& sorted,
                                   double eps_eq, std::optional<std::size_t> cover_size) {
  if (!(eps_eq > 0.0)) throw PreconditionError("eps_eq must be positive");
  DistanceStats s;
  s.n_points = n_points;
  s.eps_eq = eps_eq;
  const Clusters c = cluster_sorted(sorted, eps_eq);
  s.m = c.values.size();
  s.values = c.values;
  for (auto k : c.counts) {
    const std::uint64_t ni = 2 * k;
    s.multiplicities.push_back(ni);
    s.sum_n += ni;
    s.quadruples += ni * ni;
  }
  const std::uint64_t N = n_points;
  const std::uint64_t numer = N * N * N * N - 2 * N * N * N;
  s.cs_lower_bound = s.quadruples ? static_cast<double>(numer) / static_cast<double>(s.quadruples)
                                  : 0.0;
  if (cover_size) {
    const double K = static_cast<double>(*cover_size);
    s.thm_bound = static_cast<double>(N) / (K * K * K * std::log(K * static_cast<double>(N)));
  }
  return s;
}

DistanceStats distance_stats(const PointSet& P, const GeodesicCover* cover, double eps_eq,
                             unsigned threads) {
  if (P.points.size() < 2) throw PreconditionError("distance_stats needs at least two points");
  const auto d = pair_distances(P, cover, threads);
  std::optional<std::size_t> k;
  if (cover) k = cover->gamma0.size();
  return stats_from_distances(P.points.size(), d, eps_eq, k);
}

CrossStats cross_stats(const PointSet& P1, const PointSet& P2, const GeodesicCover* cover,
                       double eps_eq) {
  if (P1.surface.label() != P2.surface.label())
    throw PreconditionError("cross_stats: point sets live on different surfaces");
  if (!(eps_eq > 0.0)) throw PreconditionError("eps_eq must be positive");
  require_cover(P1.surface, cover);
  validate_point_set(P1);
  validate_point_set(P2);

  CrossStats s;
  s.n1 = P1.points.size();
  s.n2 = P2.points.size();
  std::vector<double> d;
  d.reserve(s.n1 * s.n2);
  for (const auto& p : P1.points)
    for (const auto& q : P2.points) {
      const double v = point_distance(p, q, cover);
      if (v <= kCoincident)
        ++s.intersection;
      else
        d.push_back(v);
    }
  std::sort(d.begin(), d.end());
  const Clusters c = cluster_sorted(d, eps_eq);
  s.m_cross = c.values.size();
  s.values = c.values;
  for (auto k : c.counts) {
    s.multiplicities.push_back(k);
    s.sum_n += k;
    s.quadruples_cross += k * k;
  }
  const std::size_t U = s.n1 + s.n2 - s.intersection;
  if (U >= 2) {
    const double n1 = static_cast<double>(s.n1), n2 = static_cast<double>(s.n2);
    const double u = static_cast<double>(U);
    s.bound = n1 * n1 * n2 * n2 / (u * u * u * std::log(u));
  }
  return s;
}

PointSet generate_points(PointKind kind, const Surface& surface, std::size_t count,
                         std::uint64_t seed, const GenerateOptions& options) {
  PointSet P;
  P.surface = surface;
  std::ostringstream label;
  const bool plane = surface.kind == SurfaceKind::Plane;

  switch (kind) {
    case PointKind::AreaUniform: {
      label << "area_uniform " << surface.label() << " n=" << count << " seed=" << seed;
      Rng rng(seed);
      for (std::size_t i = 0; i < count; ++i)
        P.points.push_back(plane ? sample_disk_around_i(options.plane_radius, rng)
                                 : sample_area_uniform(*surface.group, rng));
      require_distinct(P.points, surface);
      break;
    }
    case PointKind::GeodesicProgression: {
      label << "geodesic_progression " << surface.label() << " n=" << count
            << " h=" << options.spacing;
      for (std::size_t k = 0; k < count; ++k) {
        const UhpPoint z(0.0, std::exp(static_cast<double>(k) * options.spacing));
        P.points.push_back(plane ? z : reduce_to_fundamental(z, *surface.group).point);
      }
      require_distinct(P.points, surface);
      break;
    }
    case PointKind::OrbitSample: {
      label << "orbit_sample " << surface.label() << " z0=" << options.z0;
      std::vector<Isometry> elements = options.orbit_elements;
      if (elements.empty()) {
        if (plane) throw PreconditionError("orbit sample on the plane needs explicit elements");
        double R2 = 4.0;
        BallEnumeration ball = enumerate_ball(*surface.group, std::sqrt(R2));
        const double cap = surface.group->is_modular() ? kModularBallCap : kGenusBallCap;
        while (ball.elements.size() < count && 2.0 * R2 <= cap) {
          R2 *= 2.0;
          ball = enumerate_ball(*surface.group, std::sqrt(R2));
        }
        elements = ball.elements;
      }
      if (elements.size() > count) elements.resize(count);
      for (const auto& g : elements) {
        UhpPoint z = apply(g, options.z0);
        if (!plane) z = reduce_to_fundamental(z, *surface.group).point;
        const bool dup = std::any_of(P.points.begin(), P.points.end(), [&](const UhpPoint& w) {
          return distance_uhp(w, z) <= kCoincident;
        });
        if (!dup) P.points.push_back(z);
      }
      break;
    }
  }
  P.label = label.str();
  return P;
}

std::vector<QpRow> qp_scaling_experiment(const GeodesicCover& cover,
                                         const std::vector<std::size_t>& n_values,
                                         std::uint64_t seed, double eps_eq, unsigned threads) {
  if (!std::is_sorted(n_values.begin(), n_values.end()))
    throw PreconditionError("qp_scaling_experiment requires ascending N values");
  const Surface surface = Surface::of(cover.surface);
  std::vector<QpRow> rows;
  for (std::size_t n : n_values) {
    const PointSet P = generate_points(PointKind::AreaUniform, surface, n, mix_seed(seed, n));
    const auto d = pair_distances(P, &cover, threads);
    const DistanceStats s = stats_from_distances(n, d, eps_eq, cover.gamma0.size());
    QpRow row;
    row.n = n;
    row.quadruples = s.quadruples;
    const double N = static_cast<double>(n);
    row.ratio = static_cast<double>(s.quadruples) / (N * N * N * std::log(N));
    row.m = s.m;
    row.cs_lower_bound = s.cs_lower_bound;
    row.m_half = cluster_sorted(d, eps_eq / 2.0).values.size();
    row.stable = row.m_half == row.m;
    rows.push_back(row);
  }
  return rows;
}

double equilateral_alpha_min(double r) {
  if (!(r >= 0.0)) throw PreconditionError("equilateral radius must be >= 0");
  return 2.0 * std::asin(1.0 / (2.0 * std::cosh(r / 2.0)));
}

std::size_t equilateral_circle_cap(double alpha_min) {
  // The slack absorbs rounding when 2 pi / alpha_min is an integer.
  return static_cast<std::size_t>(std::floor(2.0 * kPi / alpha_min + 1e-9));
}

EquilateralReport equilateral_greedy(int g, double r, std::size_t attempts, std::uint64_t seed,
                                     const EquilateralOptions& options) {
  if (!(r > 0.0)) throw PreconditionError("equilateral radius must be positive");
  const GroupPtr grp = build_regular_genus(g);
  const double vr = grp->polygon_data().vertex_radius;

  EquilateralReport report;
  report.g = g;
  report.r = r;
  report.alpha_min = equilateral_alpha_min(r);
  report.circle_cap = equilateral_circle_cap(report.alpha_min);

  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(mix_seed(seed, attempt));
    std::vector<UhpPoint> kept;
    // Every gamma with d(k, gamma q) < r has d(k, gamma i) <= r + vertex_radius.
    std::vector<std::vector<Isometry>> near;
    auto keep = [&](const UhpPoint& c) {
      kept.push_back(c);
      near.push_back(tiles_near(*grp, c, r + vr));
    };
    auto far_enough = [&](const UhpPoint& c) {
      for (std::size_t k = 0; k < kept.size(); ++k)
        for (const auto& gam : near[k])
          if (distance_uhp(kept[k], apply(gam, c)) < r - 1e-9) return false;
      return true;
    };

    const UhpPoint p0 = sample_area_uniform(*grp, rng);
    keep(p0);
    std::size_t on_circle = 0;
    for (std::size_t i = 0; i < options.circle_candidates; ++i) {
      const UhpPoint x = point_on_circle(p0, r, rng.uniform(0.0, 2.0 * kPi));
      const UhpPoint c = reduce_to_fundamental(x, *grp).point;
      if (far_enough(c)) {
        keep(c);
        ++on_circle;
      }
    }
    for (std::size_t i = 0; i < options.general_candidates; ++i) {
      const UhpPoint c = sample_area_uniform(*grp, rng);
      if (far_enough(c)) keep(c);
    }
    report.on_circle = std::max(report.on_circle, on_circle);
    if (kept.size() > report.found) {
      report.found = kept.size();
      report.points = kept;
    }
  }
  return report;
}

}  // namespace geocover

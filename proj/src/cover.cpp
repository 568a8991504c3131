#include "geocover/cover.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "geocover/error.hpp"
#include "geocover/parallel.hpp"
#include "geocover/sampling.hpp"

namespace geocover {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kOracleMargin = 1.5;
const UhpPoint kCenter(0.0, 1.0);

void require_reduced(const UhpPoint& p, const FuchsianGroup& grp) {
  if (in_fundamental(p, grp) == Region::Outside)
    throw PreconditionError("point is not in the fundamental domain; reduce it first");
}

}  // namespace

std::string to_string(CoverMethod m) {
  switch (m) {
    case CoverMethod::PaperModularTen: return "paper_modular_ten";
    case CoverMethod::BallRadiusBound: return "ball_radius_bound";
    case CoverMethod::Explicit: return "explicit";
  }
  return "explicit";
}

CoverMethod cover_method_from_string(const std::string& s) {
  if (s == "paper_modular_ten") return CoverMethod::PaperModularTen;
  if (s == "ball_radius_bound") return CoverMethod::BallRadiusBound;
  if (s == "explicit") return CoverMethod::Explicit;
  throw PreconditionError("unknown cover method '" + s + "'");
}

double modular_u0(double y1, double y2) {
  return y2 / y1 + 1.0 / (4.0 * y1 * y2) + y1 / y2;
}

double genus_normsq_cap(const PolygonData& poly) {
  return 2.0 * std::cosh(2.0 * poly.vertex_radius + poly.diam_bound);
}

double genus_normsq_cap_closed_form(double beta) {
  const double c2 = 1.0 / (std::tan(beta) * std::tan(beta));
  const double c4 = c2 * c2;
  const double cosh_part = (2.0 * c4 - 1.0) * (2.0 * c2 - 1.0);
  const double sinh_part =
      2.0 * c2 * std::sqrt(c4 - 1.0) * std::sqrt((2.0 * c2 - 1.0) * (2.0 * c2 - 1.0) - 1.0);
  return 2.0 * (cosh_part + sinh_part);
}

void validate_cover(const GeodesicCover& cover) {
  if (!cover.surface) throw PreconditionError("cover has no surface");
  const auto& g0 = cover.gamma0;
  if (std::none_of(g0.begin(), g0.end(), [](const Isometry& g) { return is_identity(g, 1e-9); }))
    throw InvariantError("cover does not contain the identity");
  for (std::size_t i = 0; i < g0.size(); ++i)
    for (std::size_t j = i + 1; j < g0.size(); ++j)
      if (same_element(g0[i], g0[j])) throw InvariantError("cover contains a duplicate element");
}

std::vector<Isometry> radical_missing(const GeodesicCover& cover) {
  std::vector<Isometry> missing;
  if (!cover.radical) return missing;
  const auto& r = *cover.radical;
  for (const auto& g : cover.gamma0) {
    bool found = false;
    for (const auto& r1 : r)
      for (const auto& r2 : r)
        if (same_element(compose(inverse(r1), r2), g)) found = true;
    if (!found) missing.push_back(g);
  }
  return missing;
}

GeodesicCover make_explicit_cover(GroupPtr surface, std::vector<Isometry> elements) {
  GeodesicCover cover;
  cover.surface = std::move(surface);
  cover.method = CoverMethod::Explicit;
  if (std::none_of(elements.begin(), elements.end(),
                   [](const Isometry& g) { return is_identity(g, 1e-9); }))
    elements.insert(elements.begin(), Isometry());
  cover.gamma0 = std::move(elements);
  validate_cover(cover);
  return cover;
}

GeodesicCover modular_cover_paper() {
  GeodesicCover cover;
  cover.surface = build_modular();
  cover.method = CoverMethod::PaperModularTen;
  cover.gamma0 = {
      Isometry::exact(1, 0, 0, 1),   Isometry::exact(1, 1, 0, 1),  Isometry::exact(1, -1, 0, 1),
      Isometry::exact(1, 0, 1, 1),   Isometry::exact(1, 0, -1, 1), Isometry::exact(0, -1, 1, 1),
      Isometry::exact(0, -1, 1, -1), Isometry::exact(1, -1, 1, 0), Isometry::exact(-1, -1, 1, 0),
      Isometry::exact(0, -1, 1, 0),
  };
  cover.radical = std::vector<Isometry>{Isometry::exact(1, 0, 0, 1), Isometry::exact(1, 1, 0, 1),
                                        Isometry::exact(1, 0, 1, 1), Isometry::exact(0, -1, 1, 0)};
  validate_cover(cover);
  return cover;
}

GeodesicCover build_cover_genus(int g) {
  if (g < 2 || g > 5) throw PreconditionError("build_cover_genus supports 2 <= g <= 5");
  GeodesicCover cover;
  cover.surface = build_regular_genus(g);
  cover.method = CoverMethod::BallRadiusBound;
  CoverSearchBounds bounds;
  bounds.normsq_cap = genus_normsq_cap(cover.surface->polygon_data());
  cover.bound_used = bounds;
  cover.gamma0 = enumerate_ball(*cover.surface, std::sqrt(bounds.normsq_cap)).elements;
  return cover;
}

double surface_distance_unchecked(const UhpPoint& p, const UhpPoint& q,
                                  const GeodesicCover& cover) {
  double best = INFINITY;
  for (const auto& g : cover.gamma0) best = std::min(best, distance_uhp(p, apply(g, q)));
  return best;
}

CoverDistance surface_distance_detail(const UhpPoint& p, const UhpPoint& q,
                                      const GeodesicCover& cover) {
  require_reduced(p, *cover.surface);
  require_reduced(q, *cover.surface);
  std::vector<double> d(cover.gamma0.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = distance_uhp(p, apply(cover.gamma0[k], q));
  CoverDistance out;
  out.distance = *std::min_element(d.begin(), d.end());
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] <= out.distance + kTieTol) out.argmins.push_back(k);
  return out;
}

double surface_distance(const UhpPoint& p, const UhpPoint& q, const GeodesicCover& cover) {
  require_reduced(p, *cover.surface);
  require_reduced(q, *cover.surface);
  return surface_distance_unchecked(p, q, cover);
}

OracleResult brute_force_modular(const UhpPoint& p, const UhpPoint& q) {
  const double x1 = p.x(), y1 = p.y(), x2 = q.x(), y2 = q.y();
  const double cap = kOracleMargin * 2.0 * std::cosh(distance_uhp(p, q));

  auto norm2 = [&](double a, double b, double c, double d) {
    const double t1 = a - x1 * c;
    const double t2 = x2 * a + b - x1 * x2 * c - x1 * d;
    const double t3 = x2 * c + d;
    return (y2 / y1) * t1 * t1 + t2 * t2 / (y1 * y2) + y1 * y2 * c * c + (y1 / y2) * t3 * t3;
  };

  OracleResult best{INFINITY, Isometry()};
  auto consider = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (norm2(static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
              static_cast<double>(d)) > cap)
      return;
    const Isometry g = Isometry::exact(a, b, c, d);
    const double dist = distance_uhp(p, apply(g, q));
    if (dist < best.distance - 1e-12 ||
        (dist <= best.distance + 1e-12 && canonical_less(g, best.gamma))) {
      best.distance = std::min(best.distance, dist);
      best.gamma = g;
    }
  };

  // c = 0: gamma = [[1, b], [0, 1]] up to sign.
  {
    const double s = std::sqrt(cap * y1 * y2);
    const auto lo = static_cast<std::int64_t>(std::ceil(x1 - x2 - s));
    const auto hi = static_cast<std::int64_t>(std::floor(x1 - x2 + s));
    for (std::int64_t b = lo; b <= hi; ++b) consider(1, b, 0, 1);
  }
  // c > 0 (sign fixed by PSL2): c^2 y1 y2 <= cap, then the a- and d-squares.
  const auto c_max = static_cast<std::int64_t>(std::floor(std::sqrt(cap / (y1 * y2))));
  for (std::int64_t c = 1; c <= c_max; ++c) {
    const double cd = static_cast<double>(c);
    const double sa = std::sqrt(cap * y1 / y2);
    const double sd = std::sqrt(cap * y2 / y1);
    const auto a_lo = static_cast<std::int64_t>(std::ceil(x1 * cd - sa));
    const auto a_hi = static_cast<std::int64_t>(std::floor(x1 * cd + sa));
    const auto d_lo = static_cast<std::int64_t>(std::ceil(-x2 * cd - sd));
    const auto d_hi = static_cast<std::int64_t>(std::floor(-x2 * cd + sd));
    for (std::int64_t a = a_lo; a <= a_hi; ++a)
      for (std::int64_t d = d_lo; d <= d_hi; ++d) {
        const std::int64_t num = a * d - 1;
        if (num % c != 0) continue;
        consider(a, num / c, c, d);
      }
  }
  return best;
}

BallOracle::BallOracle(GroupPtr grp, double inflate) : grp_(std::move(grp)) {
  if (grp_->is_modular()) throw PreconditionError("BallOracle needs a surface group");
  if (!(inflate >= 1.0)) throw PreconditionError("oracle inflation must be >= 1");
  const double R = inflate * std::sqrt(genus_normsq_cap(grp_->polygon_data()));
  ball_ = enumerate_ball(*grp_, R);
}

double BallOracle::distance(const UhpPoint& p, const UhpPoint& q) const {
  double best = INFINITY;
  for (const auto& g : ball_.elements) best = std::min(best, distance_uhp(p, apply(g, q)));
  return best;
}

double brute_force_ball(const UhpPoint& p, const UhpPoint& q, GroupPtr grp, double inflate) {
  require_reduced(p, *grp);
  require_reduced(q, *grp);
  return BallOracle(std::move(grp), inflate).distance(p, q);
}

double surface_distance_local(const UhpPoint& p, const UhpPoint& q, const FuchsianGroup& grp) {
  require_reduced(p, grp);
  require_reduced(q, grp);
  const double direct = distance_uhp(p, q);
  double best = direct;
  for (const auto& g : tiles_near(grp, p, direct + grp.polygon_data().vertex_radius))
    best = std::min(best, distance_uhp(p, apply(g, q)));
  return best;
}

std::vector<SamplePair> verification_pairs(const FuchsianGroup& grp, std::size_t n,
                                           std::uint64_t seed, double boundary_fraction) {
  Rng rng(seed);
  std::vector<SamplePair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UhpPoint p = sample_fundamental(grp, rng, boundary_fraction);
    const UhpPoint q = sample_fundamental(grp, rng, boundary_fraction);
    pairs.push_back({p, q});
  }
  return pairs;
}

VerifyReport verify_cover(const GeodesicCover& cover, std::size_t n_samples, std::uint64_t seed,
                          const VerifyOptions& options) {
  const FuchsianGroup& grp = *cover.surface;
  VerifyReport report;
  report.samples = n_samples;
  if (n_samples == 0) return report;

  const auto pairs = verification_pairs(grp, n_samples, seed, options.boundary_fraction);
  std::optional<BallOracle> ball_oracle;
  if (!grp.is_modular()) ball_oracle.emplace(cover.surface, options.inflate);

  std::vector<double> cover_d(n_samples), oracle_d(n_samples);
  std::vector<std::vector<std::size_t>> used(n_samples);
  parallel_for(n_samples, options.threads, [&](std::size_t i) {
    const auto detail = surface_distance_detail(pairs[i].p, pairs[i].q, cover);
    cover_d[i] = detail.distance;
    used[i] = detail.argmins;
    oracle_d[i] = grp.is_modular() ? brute_force_modular(pairs[i].p, pairs[i].q).distance
                                   : ball_oracle->distance(pairs[i].p, pairs[i].q);
  });

  std::set<std::size_t> used_idx;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double gap = std::abs(cover_d[i] - oracle_d[i]);
    if (!report.worst_pair || gap > report.max_abs_gap) {
      report.max_abs_gap = gap;
      report.worst_pair = pairs[i];
      report.worst_cover_distance = cover_d[i];
      report.worst_oracle_distance = oracle_d[i];
    }
    used_idx.insert(used[i].begin(), used[i].end());
  }
  for (auto k : used_idx) report.used_elements.push_back(cover.gamma0[k]);
  std::sort(report.used_elements.begin(), report.used_elements.end(), canonical_less);
  return report;
}

}  // namespace geocover

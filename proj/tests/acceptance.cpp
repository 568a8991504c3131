// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "geocover/analytics.hpp"
#include "geocover/cover.hpp"
#include "geocover/sampling.hpp"

using namespace geocover;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void note(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

void verdict(int id, bool ok, const std::string& summary) {
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, summary.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void modular_cover_reproduction() {
  const auto t0 = Clock::now();
  const GeodesicCover cover = modular_cover_paper();
  const VerifyReport r = verify_cover(cover, 5000, 1);
  const double secs = seconds_since(t0);
  const std::vector<Isometry> missing = radical_missing(cover);
  note("verify: samples=%zu max_abs_gap=%.3g time=%.2fs", r.samples, r.max_abs_gap, secs);
  for (const auto& g : missing) {
    const auto e = g.integer_entries();
    note("not in radical quotients: [[%lld,%lld],[%lld,%lld]]", static_cast<long long>(e[0]),
         static_cast<long long>(e[1]), static_cast<long long>(e[2]),
         static_cast<long long>(e[3]));
  }
  const bool verified = r.samples == 5000 && r.max_abs_gap <= 1e-9;
  verdict(1, verified && secs <= 60.0 && missing.empty(),
          fmt("10-element cover gap %.3g over 5000 pairs in %.1fs; %zu cover elements outside "
              "the radical quotients",
              r.max_abs_gap, secs, missing.size()));
}

void identity_negative_control() {
  const GeodesicCover id = make_explicit_cover(build_modular(), {});
  const VerifyReport r = verify_cover(id, 5000, 1);
  verdict(2, r.max_abs_gap >= 0.5,
          fmt("identity-only cover gap %.6f (cover %.6f vs oracle %.6f)", r.max_abs_gap,
              r.worst_cover_distance, r.worst_oracle_distance));
}

void polygon_constants() {
  double worst = 0.0;
  for (int g = 2; g <= 8; ++g) {
    const GroupPtr G = build_regular_genus(g);
    const PolygonData& P = G->polygon_data();
    const double cot = 1.0 / std::tan(kPi / (4.0 * g));
    worst = std::max({worst, std::abs(std::cosh(P.vertex_radius) - cot * cot),
                      std::abs(std::cosh(P.edge_radius) - cot),
                      std::abs(P.diam_bound - 2.0 * P.edge_radius)});
  }
  const GroupPtr G2 = build_regular_genus(2);
  const PolygonData& P2 = G2->polygon_data();
  const double direct = 2.0 * std::cosh(2.0 * P2.vertex_radius + P2.diam_bound);
  const double closed = genus_normsq_cap_closed_form(kPi / 8.0);
  const double rel = std::abs(closed - direct) / direct;
  note("g=2 cap: direct %.10f closed form %.10f", direct, closed);
  verdict(3, worst <= 1e-12 && rel <= 1e-10,
          fmt("max constant error %.2e over g=2..8; g=2 cap relative error %.2e", worst, rel));
}

void surface_group_construction() {
  double relator = 0.0, angle = 0.0;
  std::size_t overlaps = 0;
  for (int g : {2, 3}) {
    const GroupPtr G = build_regular_genus(g);
    const PolygonData& P = G->polygon_data();
    const auto& e = P.relator_product().entries();
    relator = std::max(relator, std::sqrt((e[0] - 1) * (e[0] - 1) + e[1] * e[1] + e[2] * e[2] +
                                          (e[3] - 1) * (e[3] - 1)));
    for (int k = 0; k < P.sides(); ++k)
      angle = std::max(angle, std::abs(P.interior_angle(k) - kPi / (2.0 * g)));

    BallEnumeration ball = enumerate_ball(*G, 8.0);
    while (ball.elements.size() < 101) ball = enumerate_ball(*G, 2.0 * ball.radius);
    Rng rng(mix_seed(4, g));
    std::vector<UhpPoint> samples;
    while (samples.size() < 500) {
      const UhpPoint p = sample_area_uniform(*G, rng);
      if (in_fundamental_polygon(p, *G) == Region::Interior) samples.push_back(p);
    }
    // Elements are sorted by norm, so index 0 is the identity.
    for (std::size_t k = 1; k <= 100; ++k)
      for (const auto& p : samples)
        if (in_fundamental_polygon(apply(ball.elements[k], p), *G) == Region::Interior)
          ++overlaps;
  }
  verdict(4, relator <= 1e-8 && angle <= 1e-9 && overlaps == 0,
          fmt("relator distance %.2e, angle error %.2e, %zu interior overlaps", relator, angle,
              overlaps));
}

void genus_cover_verification() {
  bool ok = true;
  std::string summary;
  for (int g : {2, 3}) {
    const auto t0 = Clock::now();
    const GeodesicCover cover = build_cover_genus(g);
    const VerifyReport r = verify_cover(cover, 1000, 1);
    const double secs = seconds_since(t0);
    ok = ok && r.samples == 1000 && r.max_abs_gap <= 1e-8 && (g != 3 || secs <= 600.0);
    summary += fmt("%sg=%d |cover|=%zu gap %.3g in %.1fs", summary.empty() ? "" : "; ", g,
                   cover.gamma0.size(), r.max_abs_gap, secs);
  }
  verdict(5, ok, summary);
}

std::size_t modular_count_by_scan(int R2) {
  const int M = static_cast<int>(std::sqrt(R2));
  std::size_t n = 0;
  for (int a = -M; a <= M; ++a)
    for (int b = -M; b <= M; ++b)
      for (int c = -M; c <= M; ++c)
        for (int d = -M; d <= M; ++d)
          if (a * d - b * c == 1 && a * a + b * b + c * c + d * d <= R2) ++n;
  return n / 2;  // +-gamma
}

void lattice_uniformity() {
  std::vector<double> grid;
  const int steps = 24;
  for (int k = 0; k <= steps; ++k)
    grid.push_back(std::sqrt(2.0 * std::pow(kGenusBallCap / 2.0, static_cast<double>(k) / steps)));
  grid.back() = std::sqrt(kGenusBallCap) * (1.0 - 1e-12);

  double c0 = 0.0, measured = 0.0;
  bool below_bound = true;
  for (int g = 2; g <= 5; ++g) {
    const GroupPtr G = build_regular_genus(g);
    const double od = G->polygon_data().edge_radius;
    const BallEnumeration ball = enumerate_ball(*G, grid.back());
    for (const LatticeRow& row : lattice_count_table(ball, grid)) {
      const double Q = std::acosh(row.R * row.R / 2.0);
      const double bound = (std::cosh(Q + od) - 1.0) / (std::cosh(od) - 1.0);
      c0 = std::max(c0, bound / (row.R * row.R));
      measured = std::max(measured, row.ratio);
      below_bound = below_bound && static_cast<double>(row.count) <= bound;
    }
    note("g=%d: N(%.0f) = %zu", g, grid.back(), ball.elements.size());
  }

  const GroupPtr M = build_modular();
  const std::size_t n30 = enumerate_ball(*M, 30.0).elements.size();
  const std::size_t scan = modular_count_by_scan(900);
  const double ratio = static_cast<double>(n30) / 900.0;
  note("modular N(30) = %zu (integer scan %zu), ratio %.4f", n30, scan, ratio);
  verdict(6,
          below_bound && measured <= c0 && n30 == scan && std::abs(ratio - 3.0) <= 0.15 * 3.0,
          fmt("max N/R^2 = %.4f <= C0 = %.4f over g=2..5, R^2 <= %.0e; modular N(30)/900 = %.4f",
              measured, c0, kGenusBallCap, ratio));
}

struct NamedSet {
  std::string name;
  PointSet set;
  const GeodesicCover* cover;
};

void combinatorial_identities(const GeodesicCover& modular, const GeodesicCover& genus2,
                              std::uint64_t qp_seed) {
  std::vector<NamedSet> sets;
  const Surface mod = Surface::of(modular.surface);
  for (std::size_t n : {100, 200, 400, 800})
    sets.push_back({"modular area N=" + std::to_string(n),
                    generate_points(PointKind::AreaUniform, mod, n, mix_seed(qp_seed, n)),
                    &modular});
  for (std::size_t n : {100, 400})
    sets.push_back({"genus:2 area N=" + std::to_string(n),
                    generate_points(PointKind::AreaUniform, Surface::of(genus2.surface), n, 7),
                    &genus2});
  sets.push_back({"plane area N=400",
                  generate_points(PointKind::AreaUniform, Surface::plane(), 400, 7), nullptr});
  sets.push_back({"modular progression N=40",
                  generate_points(PointKind::GeodesicProgression, mod, 40, 0), &modular});
  // Plane orbit of a point under PSL2(Z): many exactly repeated distances.
  GenerateOptions orbit;
  orbit.orbit_elements = enumerate_ball(*modular.surface, 40.0).elements;
  sets.push_back({"plane modular orbit N=200",
                  generate_points(PointKind::OrbitSample, Surface::plane(), 200, 0, orbit),
                  nullptr});

  bool identities = true;
  std::size_t unstable = 0;
  for (const auto& s : sets) {
    const std::uint64_t N = s.set.points.size();
    const auto d = pair_distances(s.set, s.cover);
    const DistanceStats st = stats_from_distances(N, d, kDefaultEpsEq, std::nullopt);
    std::uint64_t q = 0, sum = 0;
    for (auto n : st.multiplicities) {
      sum += n;
      q += n * n;
    }
    const bool ok = st.sum_n == N * N - N && sum == st.sum_n && st.quadruples == q &&
                    cauchy_schwarz_holds(st.m, st.quadruples, N * N - N) &&
                    static_cast<double>(st.m) >= st.cs_lower_bound;
    const std::size_t m_half = cluster_sorted(d, kDefaultEpsEq / 2.0).values.size();
    const std::size_t m_fine = cluster_sorted(d, 1e-12).values.size();
    identities = identities && ok;
    if (m_half != st.m) ++unstable;
    note("%-26s N=%-4llu m=%-6zu |Q|=%-8llu identities %s, m at eps/2 %+lld, at 1e-12 %+lld",
         s.name.c_str(), static_cast<unsigned long long>(N), st.m,
         static_cast<unsigned long long>(st.quadruples), ok ? "ok" : "BROKEN",
         static_cast<long long>(m_half) - static_cast<long long>(st.m),
         static_cast<long long>(m_fine) - static_cast<long long>(st.m));
  }
  verdict(7, identities && unstable == 0,
          fmt("exact identities %s on %zu point sets; %zu sets change m when eps_eq is halved",
              identities ? "hold" : "fail", sets.size(), unstable));
}

void quadruple_trend(const GeodesicCover& modular, std::uint64_t seed) {
  const auto rows = qp_scaling_experiment(modular, {100, 200, 400, 800}, seed);
  for (const auto& r : rows)
    note("N=%zu |Q|=%llu ratio=%.6g m=%zu", r.n, static_cast<unsigned long long>(r.quadruples),
         r.ratio, r.m);
  const double growth = rows.back().ratio / rows.front().ratio;
  verdict(8, growth <= 3.0, fmt("ratio(800) / ratio(100) = %.4f", growth));
}

void equilateral_bounds() {
  bool capped = true, beyond = true;
  double C = 0.0;
  std::vector<std::size_t> found(9, 0);
  for (int g = 2; g <= 8; ++g) {
    const GroupPtr G = build_regular_genus(g);
    const PolygonData& P = G->polygon_data();
    const EquilateralReport rep = equilateral_greedy(g, P.edge_radius, 4, 1);
    found[g] = rep.found;
    capped = capped && rep.on_circle <= rep.circle_cap &&
             rep.circle_cap == static_cast<std::size_t>(
                                   std::floor(2.0 * kPi / (2.0 * std::asin(1.0 / (
                                       2.0 * std::cosh(P.edge_radius / 2.0)))) + 1e-9));
    const EquilateralReport far = equilateral_greedy(g, P.diam_bound * 1.05, 2, 1);
    beyond = beyond && far.found == 1;
    if (g <= 4) C = std::max(C, static_cast<double>(rep.found) / g);
    note("g=%d r=%.4f found=%zu on_circle=%zu cap=%zu; r=1.05 diam found=%zu", g,
         P.edge_radius, rep.found, rep.on_circle, rep.circle_cap, far.found);
  }
  bool linear = true;
  for (int g = 5; g <= 8; ++g) linear = linear && static_cast<double>(found[g]) <= C * g;
  verdict(9, capped && beyond && linear,
          fmt("on-circle counts %s their caps; C = %.3f fitted on g=2..4 %s g=5..8; "
              "r > diam gives one point %s",
              capped ? "within" : "exceed", C, linear ? "bounds" : "fails on",
              beyond ? "always" : "not always"));
}

void kernel_cross_validation() {
  Rng rng(10);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const UhpPoint p = sample_disk_around_i(6.0, rng);
    const UhpPoint q = sample_disk_around_i(6.0, rng);
    const double via = distance_via_norms(point_to_isometry(p), Isometry(), point_to_isometry(q));
    worst = std::max(worst, std::abs(via - distance_uhp(p, q)));
  }
  verdict(10, worst <= 1e-10, fmt("max |direct - norm identity| = %.2e over 10^4 pairs", worst));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  modular_cover_reproduction();
  identity_negative_control();
  polygon_constants();
  surface_group_construction();
  genus_cover_verification();
  lattice_uniformity();
  const GeodesicCover modular = modular_cover_paper();
  const GeodesicCover genus2 = build_cover_genus(2);
  combinatorial_identities(modular, genus2, 1);
  quadruple_trend(modular, 1);
  equilateral_bounds();
  kernel_cross_validation();
  std::printf("%d of 10 criteria failed (%.1fs)\n", failures, seconds_since(t0));
  return failures ? 1 : 0;
}

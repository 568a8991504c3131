#include "geocover/fuchsian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "geocover/error.hpp"

namespace geocover {

namespace {

constexpr int kReduceIterationCap = 100000;

// Products of many near-cancelling float matrices lose digits to rounding;
// the relator and vertex-cycle checks multiply in extended precision.
using Wide = std::array<long double, 4>;

Wide widen(const Isometry& g) { return {g.a(), g.b(), g.c(), g.d()}; }

Wide wide_mul(const Wide& x, const Wide& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

Isometry narrow(const Wide& m) {
  const long double det = m[0] * m[3] - m[1] * m[2];
  const long double s = 1.0L / std::sqrt(det);
  return Isometry(static_cast<double>(m[0] * s), static_cast<double>(m[1] * s),
                  static_cast<double>(m[2] * s), static_cast<double>(m[3] * s));
}

Wide wide_rotation(long double angle) {
  const long double t = angle / 2.0L;
  return {std::cos(t), std::sin(t), -std::sin(t), std::cos(t)};
}

// Side k onto side j, reversed: turn the midpoint direction of side k to
// -pi/2, translate 2 edge_radius up the imaginary axis, turn +pi/2 onto the
// midpoint direction of side j.
Isometry closed_form_side_map(int k, int j, int n, long double edge_radius) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double tk = (2.0L * k + 1.0L) * pi / n, tj = (2.0L * j + 1.0L) * pi / n;
  const long double e = std::exp(edge_radius);
  const Wide shift{e, 0.0L, 0.0L, 1.0L / e};
  return narrow(wide_mul(wide_rotation(tj - pi / 2.0L),
                         wide_mul(shift, wide_rotation(-tk - pi / 2.0L))));
}

double frobenius_distance(const Isometry& g, const Isometry& h) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double e = g.entries()[k] - h.entries()[k];
    s += e * e;
  }
  return std::sqrt(s);
}

void check(bool ok, const std::string& what, int g) {
  if (!ok) {
    std::ostringstream msg;
    msg << "regular genus-" << g << " polygon check failed: " << what;
    throw InvariantError(msg.str());
  }
}

bool lex_less(const UhpPoint& p, const UhpPoint& q) {
  if (p.x() != q.x()) return p.x() < q.x();
  return p.y() < q.y();
}

const UhpPoint kCenter(0.0, 1.0);

}  // namespace

UhpPoint PolygonData::vertex(int k) const {
  const int n = sides();
  return disk_uhp(vertices[((k % n) + n) % n]);
}

Isometry PolygonData::side_map(int k) const {
  const int n = sides();
  k = ((k % n) + n) % n;
  const int block = k / 4;
  const int off = k % 4;
  switch (off) {
    case 0: return pair_maps[2 * block];
    case 1: return pair_maps[2 * block + 1];
    case 2: return inverse(pair_maps[2 * block]);
    default: return inverse(pair_maps[2 * block + 1]);
  }
}

Isometry PolygonData::a(int m) const { return inverse(pair_maps[2 * m]); }
Isometry PolygonData::b(int m) const { return pair_maps[2 * m + 1]; }

Isometry PolygonData::relator_product() const {
  Wide prod{1.0L, 0.0L, 0.0L, 1.0L};
  for (int m = 0; m < g; ++m) {
    const Isometry am = a(m), bm = b(m);
    for (const Isometry& f : {am, bm, inverse(am), inverse(bm)}) prod = wide_mul(prod, widen(f));
  }
  return narrow(prod);
}

double PolygonData::interior_angle(int k) const {
  return angle_at(vertex(k), vertex(k - 1), vertex(k + 1));
}

const PolygonData& FuchsianGroup::polygon_data() const {
  if (!polygon_) throw PreconditionError("group has no polygon data");
  return *polygon_;
}

std::string FuchsianGroup::label() const {
  if (kind_ == GroupKind::Modular) return "modular";
  return "genus:" + std::to_string(genus_);
}

double FuchsianGroup::max_generator_norm() const {
  double r = 0.0;
  for (const auto& h : generators_) r = std::max(r, std::sqrt(norm_sq(h)));
  return r;
}

GroupPtr build_modular() {
  auto grp = std::shared_ptr<FuchsianGroup>(new FuchsianGroup());
  grp->kind_ = GroupKind::Modular;
  grp->genus_ = 0;
  grp->generators_ = {Isometry::exact(1, 1, 0, 1), Isometry::exact(1, -1, 0, 1),
                      Isometry::exact(0, -1, 1, 0)};
  for (const auto& h : grp->generators_) grp->neighbor_centers_.push_back(apply(h, kCenter));
  return grp;
}

GroupPtr build_regular_genus(int g) {
  if (g < 2 || g > kMaxGenus) throw PreconditionError("genus must lie in [2, 16]");
  PolygonData poly;
  poly.g = g;
  const int n = 4 * g;
  poly.beta = kPi / n;
  poly.edge_radius = right_triangle_leg(poly.beta);
  poly.vertex_radius = right_triangle_hyp(poly.beta);
  const double cot = 1.0 / std::tan(poly.beta);
  poly.diam_bound = stable_acosh(2.0 * cot * cot - 1.0);
  check(std::abs(poly.diam_bound - 2.0 * poly.edge_radius) <= 1e-12, "diam_bound = 2 edge_radius",
        g);

  const double rho = std::tanh(poly.vertex_radius / 2.0);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    poly.vertices.emplace_back(rho * std::cos(t), rho * std::sin(t));
  }

  poly.pairing.assign(n, -1);
  for (int m = 0; m < g; ++m) {
    poly.pairing[4 * m] = 4 * m + 2;
    poly.pairing[4 * m + 2] = 4 * m;
    poly.pairing[4 * m + 1] = 4 * m + 3;
    poly.pairing[4 * m + 3] = 4 * m + 1;
  }
  for (int k = 0; k < n; ++k)
    check(poly.pairing[k] != k && poly.pairing[poly.pairing[k]] == k,
          "pairing is a fixed-point-free involution", g);

  for (int m = 0; m < g; ++m) {
    for (int src : {4 * m, 4 * m + 1}) {
      const int dst = poly.pairing[src];
      const Isometry h = closed_form_side_map(src, dst, n, poly.edge_radius);
      const Isometry via_segments = isometry_from_segments(
          poly.vertex(src), poly.vertex(src + 1), poly.vertex(dst + 1), poly.vertex(dst));
      check(entry_distance(h, via_segments) <= 1e-9 * std::sqrt(norm_sq(h)),
            "side map agrees with the segment construction", g);
      poly.pair_maps.push_back(h);
    }
  }

  for (int k = 0; k < n; ++k) {
    const Isometry h = poly.side_map(k);
    const int dst = poly.pairing[k];
    check(distance_uhp(apply(h, poly.vertex(k)), poly.vertex(dst + 1)) <= 1e-9 &&
              distance_uhp(apply(h, poly.vertex(k + 1)), poly.vertex(dst)) <= 1e-9,
          "side map endpoints", g);
    check(std::abs(poly.interior_angle(k) - kPi / (2.0 * g)) <= 1e-9, "interior angle pi/2g", g);
  }

  check(frobenius_distance(poly.relator_product(), Isometry()) <= 1e-8, "commutator relator", g);

  // Vertex cycle: v_j is the start of side j, which is carried to the end
  // of side pairing[j], i.e. the start of side pairing[j] + 1.
  {
    std::vector<bool> seen(n, false);
    Wide around{1.0L, 0.0L, 0.0L, 1.0L};
    int j = 0;
    for (int step = 0; step < n; ++step) {
      check(!seen[j], "vertex cycle revisits a vertex early", g);
      seen[j] = true;
      around = wide_mul(widen(poly.side_map(j)), around);
      j = (poly.pairing[j] + 1) % n;
    }
    check(j == 0, "vertex cycle closes", g);
    check(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }),
          "all vertices in one cycle", g);
    check(frobenius_distance(narrow(around), Isometry()) <= 1e-8,
          "vertex cycle composes to identity", g);
  }

  auto grp = std::shared_ptr<FuchsianGroup>(new FuchsianGroup());
  grp->kind_ = GroupKind::RegularGenus;
  grp->genus_ = g;
  for (const auto& h : poly.pair_maps) grp->generators_.push_back(h);
  for (const auto& h : poly.pair_maps) grp->generators_.push_back(inverse(h));
  for (const auto& h : grp->generators_) grp->neighbor_centers_.push_back(apply(h, kCenter));
  grp->polygon_ = std::move(poly);
  return grp;
}

GroupPtr build_group(const std::string& label) {
  if (label == "modular") return build_modular();
  const std::string prefix = "genus:";
  if (label.rfind(prefix, 0) == 0) {
    const std::string rest = label.substr(prefix.size());
    std::size_t used = 0;
    int g = 0;
    try {
      g = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && !rest.empty()) return build_regular_genus(g);
  }
  throw PreconditionError("unknown surface '" + label + "' (expected modular or genus:<g>)");
}

Region in_fundamental_modular(const UhpPoint& p) {
  const double ax = std::abs(p.x());
  const double r = std::hypot(p.x(), p.y());
  if (ax < 0.5 - kBoundaryTol && r > 1.0 + kBoundaryTol) return Region::Interior;
  if (ax <= 0.5 + kBoundaryTol && r >= 1.0 - kBoundaryTol) return Region::Boundary;
  return Region::Outside;
}

Region in_fundamental_polygon(const UhpPoint& p, const FuchsianGroup& grp) {
  if (grp.is_modular()) throw PreconditionError("in_fundamental_polygon needs a surface group");
  const double d0 = distance_uhp(p, kCenter);
  double margin = INFINITY;
  for (const auto& c : grp.neighbor_centers()) margin = std::min(margin, distance_uhp(p, c) - d0);
  if (margin > kBoundaryTol) return Region::Interior;
  if (margin >= -kBoundaryTol) return Region::Boundary;
  return Region::Outside;
}

Region in_fundamental(const UhpPoint& p, const FuchsianGroup& grp) {
  return grp.is_modular() ? in_fundamental_modular(p) : in_fundamental_polygon(p, grp);
}

namespace {

Reduction reduce_modular(const UhpPoint& p) {
  const Isometry S = Isometry::exact(0, -1, 1, 0);
  Isometry gamma;
  UhpPoint z = p;
  for (int round = 0; round < 4; ++round) {
    int iterations = 0;
    for (;;) {
      if (++iterations > kReduceIterationCap)
        throw CapExceeded("modular reduction did not terminate");
      const double shift = std::floor(z.x() + 0.5);
      if (shift != 0.0) {
        const Isometry t = Isometry::exact(1, -static_cast<std::int64_t>(shift), 0, 1);
        gamma = compose(t, gamma);
        z = apply(t, z);
      }
      if (z.x() * z.x() + z.y() * z.y() < 1.0) {
        gamma = compose(S, gamma);
        z = apply(S, z);
        continue;
      }
      break;
    }
    // Recompute from the exact word so that point = gamma(p) holds tightly.
    z = apply(gamma, p);
    if (in_fundamental_modular(z) != Region::Outside) break;
  }
  if (in_fundamental_modular(z) == Region::Outside)
    throw CapExceeded("modular reduction stalled on the boundary");

  if (in_fundamental_modular(z) == Region::Boundary) {
    if (std::abs(z.x() - 0.5) <= kBoundaryTol) {
      const Isometry t = Isometry::exact(1, -1, 0, 1);
      gamma = compose(t, gamma);
      z = apply(gamma, p);
    }
    if (std::hypot(z.x(), z.y()) - 1.0 <= kBoundaryTol && z.x() > 0.0) {
      gamma = compose(S, gamma);
      z = apply(gamma, p);
    }
  }
  return {z, gamma};
}

Reduction reduce_polygon(const UhpPoint& p, const FuchsianGroup& grp) {
  Isometry gamma;
  UhpPoint z = p;
  int iterations = 0;
  while (in_fundamental_polygon(z, grp) == Region::Outside) {
    if (++iterations > kReduceIterationCap)
      throw CapExceeded("polygon reduction exceeded the iteration cap");
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < grp.generators().size(); ++k) {
      const double d = distance_uhp(apply(grp.generators()[k], z), kCenter);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    gamma = compose(grp.generators()[best], gamma);
    z = apply(grp.generators()[best], z);
  }
  if (in_fundamental_polygon(z, grp) == Region::Interior) return {z, gamma};

  // Boundary: collect the equivalent boundary representatives reachable by
  // generator steps and keep the lexicographically smallest.
  std::vector<Reduction> reps{{z, gamma}};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& h : grp.generators()) {
      const UhpPoint q = apply(h, reps[i].point);
      if (in_fundamental_polygon(q, grp) == Region::Outside) continue;
      const bool known = std::any_of(reps.begin(), reps.end(), [&](const Reduction& r) {
        return distance_uhp(r.point, q) <= kBoundaryTol;
      });
      if (!known) reps.push_back({q, compose(h, reps[i].gamma)});
    }
  }
  return *std::min_element(reps.begin(), reps.end(), [](const Reduction& x, const Reduction& y) {
    return lex_less(x.point, y.point);
  });
}

}  // namespace

Reduction reduce_to_fundamental(const UhpPoint& p, const FuchsianGroup& grp) {
  return grp.is_modular() ? reduce_modular(p) : reduce_polygon(p, grp);
}

}  // namespace geocover

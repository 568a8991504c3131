#include "geocover/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "geocover/error.hpp"

namespace geocover {

namespace {

constexpr int kRejectionCap = 1'000'000;

UhpPoint modular_area_uniform(Rng& rng) {
  // 1/y is uniform under the density 1/y^2.
  const double lo = 1.0 / kModularSampleHeight;
  const double hi = 2.0 / std::sqrt(3.0);
  for (int k = 0; k < kRejectionCap; ++k) {
    const double x = rng.uniform(-0.5, 0.5);
    const double y = 1.0 / rng.uniform(lo, hi);
    if (x * x + y * y >= 1.0) return {x, y};
  }
  throw CapExceeded("modular rejection sampling failed");
}

UhpPoint modular_near_boundary(Rng& rng) {
  const double shift = rng.uniform() * kBoundaryBand;
  const int piece = static_cast<int>(rng.next() % 3);
  if (piece < 2) {
    const double lo = 1.0 / kModularSampleHeight;
    const double hi = 2.0 / std::sqrt(3.0);
    const double y = 1.0 / rng.uniform(lo, hi);
    const double x = piece == 0 ? -0.5 + shift : 0.5 - shift;
    return {x, std::max(y, std::sqrt(1.0 - x * x))};
  }
  const double t = rng.uniform(kPi / 3.0, 2.0 * kPi / 3.0);
  const double r = 1.0 + shift;
  double x = r * std::cos(t);
  x = std::clamp(x, -0.5, 0.5);
  return {x, std::sqrt(r * r - x * x)};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

UhpPoint sample_disk_around_i(double radius, Rng& rng) {
  const double c = 1.0 + rng.uniform() * (std::cosh(radius) - 1.0);
  const double rho = std::tanh(stable_acosh(c) / 2.0);
  const double t = rng.uniform(0.0, 2.0 * kPi);
  return disk_uhp(DiskPoint(rho * std::cos(t), rho * std::sin(t)));
}

UhpPoint sample_area_uniform(const FuchsianGroup& grp, Rng& rng) {
  if (grp.is_modular()) return modular_area_uniform(rng);
  const double radius = grp.polygon_data().vertex_radius;
  for (int k = 0; k < kRejectionCap; ++k) {
    UhpPoint p = sample_disk_around_i(radius, rng);
    if (in_fundamental_polygon(p, grp) != Region::Outside) return p;
  }
  throw CapExceeded("polygon rejection sampling failed");
}

UhpPoint sample_near_boundary(const FuchsianGroup& grp, Rng& rng) {
  if (grp.is_modular()) return modular_near_boundary(rng);
  const PolygonData& poly = grp.polygon_data();
  const UhpPoint center(0.0, 1.0);
  for (int k = 0; k < kRejectionCap; ++k) {
    const int side = static_cast<int>(rng.next() % static_cast<std::uint64_t>(poly.sides()));
    const UhpPoint on_side = geodesic_point(poly.vertex(side), poly.vertex(side + 1), rng.uniform());
    const double inward = rng.uniform() * kBoundaryBand;
    const double len = distance_uhp(on_side, center);
    const UhpPoint p = inward < len ? geodesic_point(on_side, center, inward / len) : on_side;
    if (in_fundamental_polygon(p, grp) != Region::Outside) return p;
  }
  throw CapExceeded("boundary sampling failed");
}

UhpPoint sample_fundamental(const FuchsianGroup& grp, Rng& rng, double boundary_fraction) {
  if (rng.uniform() < boundary_fraction) return sample_near_boundary(grp, rng);
  return sample_area_uniform(grp, rng);
}

}  // namespace geocover

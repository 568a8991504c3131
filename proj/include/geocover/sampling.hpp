#pragma once

#include <cstdint>
#include <random>

#include "geocover/fuchsian.hpp"

namespace geocover {

// Seeded generator with a fixed double conversion, so sample streams are
// reproducible independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and an index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

inline constexpr double kModularSampleHeight = 20.0;
inline constexpr double kBoundaryBand = 1e-3;

/// Area-uniform point of the fundamental domain.  Modular: density 1/y^2 on
/// the strip truncated at y <= 20.  Surface groups: rejection sampling from
/// the hyperbolic disk of radius vertex_radius around i.
UhpPoint sample_area_uniform(const FuchsianGroup& grp, Rng& rng);

/// Point of the fundamental domain within 1e-3 of its boundary.
UhpPoint sample_near_boundary(const FuchsianGroup& grp, Rng& rng);

/// Area-uniform sample with probability 1 - boundary_fraction, otherwise
/// boundary biased.
UhpPoint sample_fundamental(const FuchsianGroup& grp, Rng& rng, double boundary_fraction);

/// Area-uniform point of the hyperbolic disk of the given radius around i.
UhpPoint sample_disk_around_i(double radius, Rng& rng);

}  // namespace geocover

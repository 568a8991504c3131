#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "geocover/error.hpp"
#include "geocover/fuchsian.hpp"

namespace geocover {

namespace {

constexpr double kOrbitTol = 0.25;
constexpr double kLogCell = 0.5;
constexpr double kFrontierSlack = 1.01;
constexpr std::size_t kVisitedCap = 50'000'000;

using Key = std::array<std::int64_t, 4>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Surface-group elements keyed by the orbit point g(i).  Distinct elements
// move i at least 2 |OD| > 3 apart; rounding drift in long products stays
// far below kOrbitTol.  Cells are kLogCell wide in log y and about
// kLogCell * y wide in x.
class OrbitPointSet {
 public:
  bool insert(const Isometry& g) {
    const UhpPoint z = apply(g, UhpPoint(0.0, 1.0));
    if (contains(z)) return false;
    const std::int64_t row = band(z.y());
    cells_[{row, column(z.x(), row), 0, 0}].push_back(points_.size());
    points_.push_back(z);
    return true;
  }

 private:
  static std::int64_t band(double y) {
    return static_cast<std::int64_t>(std::floor(std::log(y) / kLogCell));
  }
  static double width(std::int64_t row) {
    return kLogCell * std::exp(static_cast<double>(row) * kLogCell);
  }
  static std::int64_t column(double x, std::int64_t row) {
    return static_cast<std::int64_t>(std::floor(x / width(row)));
  }

  bool contains(const UhpPoint& z) const {
    // The hyperbolic disk of radius r about z lies in |x' - x| <= y sinh r,
    // |log y' - log y| <= r.
    const double dx = z.y() * std::sinh(kOrbitTol);
    for (std::int64_t row = band(z.y() * std::exp(-kOrbitTol));
         row <= band(z.y() * std::exp(kOrbitTol)); ++row)
      for (std::int64_t col = column(z.x() - dx, row); col <= column(z.x() + dx, row); ++col) {
        auto it = cells_.find({row, col, 0, 0});
        if (it == cells_.end()) continue;
        for (auto idx : it->second)
          if (distance_uhp(points_[idx], z) <= kOrbitTol) return true;
      }
    return false;
  }

  std::vector<UhpPoint> points_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

class ExactIsometrySet {
 public:
  bool insert(const Isometry& g) { return set_.insert(g.integer_entries()).second; }

 private:
  std::unordered_set<Key, KeyHash> set_;
};

template <class Set, class Keep>
std::vector<Isometry> breadth_first(const FuchsianGroup& grp, Keep keep) {
  Set visited;
  std::vector<Isometry> found{Isometry()};
  visited.insert(found.front());
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& h : grp.generators()) {
      Isometry x = compose(found[head], h);
      if (!keep(x)) continue;
      if (!visited.insert(x)) continue;
      found.push_back(std::move(x));
      if (found.size() > kVisitedCap) throw CapExceeded("group walk exceeded the element cap");
    }
  }
  return found;
}

const UhpPoint kCenter(0.0, 1.0);

}  // namespace

BallEnumeration enumerate_ball(const FuchsianGroup& grp, double R, FrontierPolicy policy) {
  const double R2 = R * R;
  if (!(R2 >= 2.0 - 1e-12)) throw PreconditionError("enumerate_ball requires R >= sqrt(2)");
  const double cap = grp.is_modular() ? kModularBallCap : kGenusBallCap;
  if (R2 > cap) throw CapExceeded("enumerate_ball radius exceeds the desk cap");

  double frontier = kFrontierSlack * R;
  if (policy == FrontierPolicy::Submultiplicative) frontier *= grp.max_generator_norm();
  const double frontier2 = frontier * frontier;
  auto keep = [&](const Isometry& x) { return norm_sq(x) <= frontier2; };

  std::vector<Isometry> walk = grp.is_modular()
                                   ? breadth_first<ExactIsometrySet>(grp, keep)
                                   : breadth_first<OrbitPointSet>(grp, keep);

  BallEnumeration ball;
  ball.radius = R;
  ball.depth = stable_acosh(std::max(1.0, R2 / 2.0));
  ball.exact = grp.is_modular();
  for (auto& x : walk)
    if (norm_sq(x) <= R2 + 1e-9) ball.elements.push_back(std::move(x));
  std::sort(ball.elements.begin(), ball.elements.end(), canonical_less);
  return ball;
}

std::vector<LatticeRow> lattice_count_table(const BallEnumeration& ball,
                                            const std::vector<double>& R_values) {
  if (!std::is_sorted(R_values.begin(), R_values.end()))
    throw PreconditionError("lattice_count_table requires ascending R values");
  std::vector<double> norms;
  norms.reserve(ball.elements.size());
  for (const auto& e : ball.elements) norms.push_back(norm_sq(e));
  std::sort(norms.begin(), norms.end());

  std::vector<LatticeRow> rows;
  for (double R : R_values) {
    if (R > ball.radius * (1.0 + 1e-12))
      throw PreconditionError("lattice_count_table: R beyond the enumerated ball");
    const double R2 = R * R;
    LatticeRow row;
    row.R = R;
    row.count = static_cast<std::size_t>(
        std::upper_bound(norms.begin(), norms.end(), R2 + 1e-9) - norms.begin());
    row.ratio = static_cast<double>(row.count) / R2;
    rows.push_back(row);
  }
  return rows;
}

std::vector<LatticeRow> lattice_count_table(const FuchsianGroup& grp,
                                            const std::vector<double>& R_values) {
  if (R_values.empty()) return {};
  if (!std::is_sorted(R_values.begin(), R_values.end()))
    throw PreconditionError("lattice_count_table requires ascending R values");
  return lattice_count_table(enumerate_ball(grp, R_values.back()), R_values);
}

std::vector<Isometry> tiles_near(const FuchsianGroup& grp, const UhpPoint& center,
                                 double radius) {
  if (grp.is_modular()) throw PreconditionError("tiles_near needs a surface group");
  const PolygonData& poly = grp.polygon_data();
  if (in_fundamental_polygon(center, grp) == Region::Outside)
    throw PreconditionError("tiles_near: center outside the fundamental polygon");
  if (radius < poly.vertex_radius) radius = poly.vertex_radius;
  auto keep = [&](const Isometry& x) {
    return distance_uhp(center, apply(x, kCenter)) <= radius + 1e-9;
  };
  return breadth_first<OrbitPointSet>(grp, keep);
}

double min_separation(const BallEnumeration& ball) {
  std::vector<const Isometry*> sorted;
  for (const auto& e : ball.elements) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const Isometry* x, const Isometry* y) { return x->a() < y->a(); });
  double best = INFINITY;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size() && sorted[j]->a() - sorted[i]->a() < best; ++j)
      best = std::min(best, entry_distance(*sorted[i], *sorted[j]));
  return best;
}

}  // namespace geocover

#include "geocover/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

#include "geocover/error.hpp"

namespace geocover {

namespace {

constexpr double kSignEps = 1e-12;
constexpr double kExactLimit = 9007199254740992.0;  // 2^53

std::array<double, 4> sign_normalized(std::array<double, 4> m) {
  for (double v : m) {
    if (std::abs(v) > kSignEps) {
      if (v < 0)
        for (double& e : m) e = -e;
      break;
    }
  }
  for (double& e : m)
    if (e == 0.0) e = 0.0;  // drop negative zero
  return m;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("integer overflow in exact compose");
  return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("integer overflow in exact compose");
  if (std::abs(static_cast<double>(r)) >= kExactLimit)
    throw OverflowError("exact entry exceeds 2^53");
  return r;
}

std::complex<double> to_complex(const UhpPoint& p) { return {p.x(), p.y()}; }

}  // namespace

UhpPoint::UhpPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw PreconditionError("UhpPoint requires finite x and y > 0");
}

DiskPoint::DiskPoint(double u, double v) : u_(u), v_(v) {
  if (!(u * u + v * v < 1.0)) throw PreconditionError("DiskPoint requires u^2 + v^2 < 1");
}

std::ostream& operator<<(std::ostream& os, const UhpPoint& p) {
  return os << "(" << p.x() << ", " << p.y() << ")";
}

Isometry::Isometry() : m_{1.0, 0.0, 0.0, 1.0}, exact_(true) {}

Isometry::Isometry(Raw, std::array<double, 4> m, bool exact)
    : m_(sign_normalized(m)), exact_(exact) {}

double Isometry::det_tolerance(double a, double b, double c, double d) {
  return 1e-12 * std::max(1.0, std::abs(a * d) + std::abs(b * c));
}

Isometry::Isometry(double a, double b, double c, double d) : exact_(false) {
  const double det = a * d - b * c;
  if (!std::isfinite(det) || std::abs(det - 1.0) > det_tolerance(a, b, c, d)) {
    std::ostringstream msg;
    msg << "Isometry determinant " << det << " differs from 1";
    throw PreconditionError(msg.str());
  }
  m_ = sign_normalized({a, b, c, d});
}

Isometry Isometry::exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  for (auto v : {a, b, c, d})
    if (std::abs(static_cast<double>(v)) >= kExactLimit)
      throw OverflowError("exact entry exceeds 2^53");
  const std::int64_t det = checked_mul(a, d) - checked_mul(b, c);
  if (det != 1) throw PreconditionError("exact Isometry requires ad - bc = 1");
  return Isometry(Raw{},
                  {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
                   static_cast<double>(d)},
                  true);
}

std::array<std::int64_t, 4> Isometry::integer_entries() const {
  if (!exact_) throw PreconditionError("integer_entries on a non-exact isometry");
  return {static_cast<std::int64_t>(m_[0]), static_cast<std::int64_t>(m_[1]),
          static_cast<std::int64_t>(m_[2]), static_cast<std::int64_t>(m_[3])};
}

std::ostream& operator<<(std::ostream& os, const Isometry& g) {
  return os << "[[" << g.a() << ", " << g.b() << "], [" << g.c() << ", " << g.d() << "]]";
}

UhpPoint apply(const Isometry& iso, const UhpPoint& p) {
  const double a = iso.a(), b = iso.b(), c = iso.c(), d = iso.d();
  const double x = p.x(), y = p.y();
  const double re = c * x + d;
  const double den = re * re + c * c * y * y;  // |cz + d|^2
  const double nx = ((a * x + b) * re + a * c * y * y) / den;
  const double ny = y / den;
  if (!(ny > 0.0) || !std::isfinite(nx))
    throw InvariantError("Moebius image left the upper half-plane");
  return {nx, ny};
}

Isometry compose(const Isometry& g, const Isometry& h) {
  if (g.exact_ && h.exact_) {
    const auto x = g.integer_entries();
    const auto y = h.integer_entries();
    const std::int64_t a = checked_add(checked_mul(x[0], y[0]), checked_mul(x[1], y[2]));
    const std::int64_t b = checked_add(checked_mul(x[0], y[1]), checked_mul(x[1], y[3]));
    const std::int64_t c = checked_add(checked_mul(x[2], y[0]), checked_mul(x[3], y[2]));
    const std::int64_t d = checked_add(checked_mul(x[2], y[1]), checked_mul(x[3], y[3]));
    return Isometry(Isometry::Raw{},
                    {static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
                     static_cast<double>(d)},
                    true);
  }
  const auto& x = g.m_;
  const auto& y = h.m_;
  std::array<double, 4> m{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  // Renormalize so long products do not drift off the determinant-one surface.
  const double det = m[0] * m[3] - m[1] * m[2];
  if (!(det > 0.0) || std::abs(det - 1.0) > 1e-6)
    throw InvariantError("compose produced a matrix far from determinant one");
  const double s = 1.0 / std::sqrt(det);
  for (double& e : m) e *= s;
  return Isometry(Isometry::Raw{}, m, false);
}

Isometry inverse(const Isometry& g) {
  return Isometry(Isometry::Raw{}, {g.m_[3], -g.m_[1], -g.m_[2], g.m_[0]}, g.exact_);
}

double norm_sq(const Isometry& g) {
  return g.a() * g.a() + g.b() * g.b() + g.c() * g.c() + g.d() * g.d();
}

double entry_distance(const Isometry& g, const Isometry& h) {
  double r = 0.0;
  for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(g.entries()[k] - h.entries()[k]));
  return r;
}

bool same_element(const Isometry& g, const Isometry& h, double tol) {
  if (g.is_exact() && h.is_exact()) return g.entries() == h.entries();
  return entry_distance(g, h) <= tol;
}

bool is_identity(const Isometry& g, double tol) {
  return same_element(g, Isometry(), tol);
}

bool canonical_less(const Isometry& g, const Isometry& h) {
  const double ng = norm_sq(g), nh = norm_sq(h);
  if (ng != nh) return ng < nh;
  return g.entries() < h.entries();
}

double acosh1p(double t) {
  if (t <= 0.0) return 0.0;
  return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double stable_acosh(double x) { return acosh1p(x - 1.0); }

double distance_uhp(const UhpPoint& p, const UhpPoint& q) {
  const double dx = p.x() - q.x();
  const double dy = p.y() - q.y();
  const double t = (dx * dx + dy * dy) / (2.0 * p.y() * q.y());
  return acosh1p(t);
}

Isometry point_to_isometry(const UhpPoint& p) {
  const double s = std::sqrt(p.y());
  return Isometry(s, p.x() / s, 0.0, 1.0 / s);
}

double distance_via_norms(const Isometry& g1, const Isometry& g, const Isometry& g2) {
  const Isometry m = compose(inverse(g1), compose(g, g2));
  return acosh1p(norm_sq(m) / 2.0 - 1.0);
}

UhpPoint disk_uhp(const DiskPoint& w) {
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> wc(w.u(), w.v());
  const std::complex<double> z = i * (1.0 - i * wc) / (1.0 + i * wc);
  return {z.real(), z.imag()};
}

DiskPoint uhp_disk(const UhpPoint& z) {
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> zc = to_complex(z);
  const std::complex<double> w = i * (zc - i) / (zc + i);
  return {w.real(), w.imag()};
}

double right_triangle_leg(double beta) {
  if (!(beta > 0.0 && beta < kPi / 4.0))
    throw DomainError("right_triangle_leg requires 0 < beta < pi/4");
  return stable_acosh(1.0 / std::tan(beta));
}

double right_triangle_hyp(double beta) {
  if (!(beta > 0.0 && beta < kPi / 4.0))
    throw DomainError("right_triangle_hyp requires 0 < beta < pi/4");
  const double cot = 1.0 / std::tan(beta);
  return stable_acosh(cot * cot);
}

double disk_area(double r) {
  if (!(r >= 0.0)) throw PreconditionError("disk_area requires r >= 0");
  const double s = std::sinh(r / 2.0);
  return 4.0 * kPi * s * s;  // 2 pi (cosh r - 1)
}

double chord_half_angle(double dist, double r) {
  if (!(dist > 0.0) || !(r > 0.0))
    throw PreconditionError("chord_half_angle requires dist > 0 and r > 0");
  double ratio = std::sinh(dist / 2.0) / std::sinh(r);
  if (ratio > 1.0 + 1e-12) throw DomainError("chord longer than the circle diameter");
  ratio = std::min(ratio, 1.0);
  return 2.0 * std::asin(ratio);
}

Isometry rotation_about_i(double angle) {
  // [[cos t, sin t], [-sin t, cos t]] turns the disk by 2t.
  const double t = angle / 2.0;
  return Isometry(std::cos(t), std::sin(t), -std::sin(t), std::cos(t));
}

namespace {

// Isometry taking A to i and B onto the imaginary axis above i.
Isometry standard_position(const UhpPoint& A, const UhpPoint& B) {
  const Isometry to_i = inverse(point_to_isometry(A));
  const DiskPoint w = uhp_disk(apply(to_i, B));
  if (w.u() == 0.0 && w.v() == 0.0) return to_i;
  // Cayley sends i t (t > 1) to the positive imaginary axis of the disk.
  const double phi = std::atan2(w.v(), w.u());
  return compose(rotation_about_i(kPi / 2.0 - phi), to_i);
}

}  // namespace

Isometry isometry_from_segments(const UhpPoint& A, const UhpPoint& B, const UhpPoint& C,
                                const UhpPoint& D) {
  const double lab = distance_uhp(A, B);
  const double lcd = distance_uhp(C, D);
  if (std::abs(lab - lcd) > 1e-9)
    throw PreconditionError("isometry_from_segments: segment lengths differ");
  return compose(inverse(standard_position(C, D)), standard_position(A, B));
}

UhpPoint geodesic_point(const UhpPoint& A, const UhpPoint& B, double s) {
  const Isometry std_pos = standard_position(A, B);
  const double len = distance_uhp(A, B);
  return apply(inverse(std_pos), UhpPoint(0.0, std::exp(s * len)));
}

UhpPoint point_on_circle(const UhpPoint& center, double r, double theta) {
  const double rho = std::tanh(r / 2.0);
  const DiskPoint w(rho * std::cos(theta), rho * std::sin(theta));
  return apply(point_to_isometry(center), disk_uhp(w));
}

double angle_at(const UhpPoint& V, const UhpPoint& A, const UhpPoint& B) {
  // Moving V to i and then to the disk center makes geodesics through V
  // straight diameters, and the map is conformal.
  const Isometry to_i = inverse(point_to_isometry(V));
  const DiskPoint wa = uhp_disk(apply(to_i, A));
  const DiskPoint wb = uhp_disk(apply(to_i, B));
  double diff = std::abs(std::atan2(wa.v(), wa.u()) - std::atan2(wb.v(), wb.u()));
  if (diff > kPi) diff = 2.0 * kPi - diff;
  return diff;
}

}  // namespace geocover

#pragma once

// Upper half-plane kernel: points, PSL2(R) elements acting by Moebius
// transformations, distances and the trigonometric identities of the regular
// 4g-gon.

#include <array>
#include <cstdint>
#include <iosfwd>

namespace geocover {

inline constexpr double kPi = 3.14159265358979323846;

/// Point x + iy of the upper half-plane; y > 0 is enforced on construction.
class UhpPoint {
 public:
  UhpPoint(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }

  friend bool operator==(const UhpPoint&, const UhpPoint&) = default;

 private:
  double x_;
  double y_;
};

/// Point u + iv of the Poincare disk; u^2 + v^2 < 1.
class DiskPoint {
 public:
  DiskPoint(double u, double v);

  double u() const { return u_; }
  double v() const { return v_; }

 private:
  double u_;
  double v_;
};

std::ostream& operator<<(std::ostream& os, const UhpPoint& p);

/// Determinant-one real 2x2 matrix, stored as the sign-normalized
/// representative of its class in PSL2(R): the first entry of (a, b, c, d)
/// with magnitude above 1e-12 is positive.
///
/// Exact isometries hold integer entries (|entry| < 2^53) and compose in
/// checked 64-bit arithmetic.
class Isometry {
 public:
  /// Identity.
  Isometry();

  /// Float matrix; throws PreconditionError when |ad - bc - 1| exceeds the
  /// scaled tolerance det_tolerance().
  Isometry(double a, double b, double c, double d);

  /// Integer matrix with ad - bc = 1 exactly; throws PreconditionError
  /// otherwise.
  static Isometry exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }
  bool is_exact() const { return exact_; }

  /// Integer entries of an exact isometry.
  std::array<std::int64_t, 4> integer_entries() const;

  /// Tolerance used for the determinant check: 1e-12 scaled by the size of
  /// the products ad and bc, which carry that much rounding by themselves.
  static double det_tolerance(double a, double b, double c, double d);

 private:
  struct Raw {};
  Isometry(Raw, std::array<double, 4> m, bool exact);

  std::array<double, 4> m_;
  bool exact_;

  friend Isometry compose(const Isometry& g, const Isometry& h);
  friend Isometry inverse(const Isometry& g);
};

std::ostream& operator<<(std::ostream& os, const Isometry& g);

UhpPoint apply(const Isometry& iso, const UhpPoint& p);
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);

/// Frobenius norm squared a^2 + b^2 + c^2 + d^2; equals 2 cosh d(g i, i).
double norm_sq(const Isometry& g);

/// Maximum absolute entry difference of the canonical representatives.
double entry_distance(const Isometry& g, const Isometry& h);

/// Same element of PSL2(R): exact equality for two exact isometries,
/// otherwise entry_distance <= tol.
bool same_element(const Isometry& g, const Isometry& h, double tol = 1e-6);

bool is_identity(const Isometry& g, double tol = 1e-12);

/// Total order on canonical forms by (norm_sq, a, b, c, d).
bool canonical_less(const Isometry& g, const Isometry& h);

/// acosh(1 + t) for t >= 0, accurate for small t.
double acosh1p(double t);

/// acosh(x) for x >= 1 computed through acosh1p.
double stable_acosh(double x);

double distance_uhp(const UhpPoint& p, const UhpPoint& q);

/// [[sqrt y, x / sqrt y], [0, 1 / sqrt y]], the upper-triangular map i -> p.
Isometry point_to_isometry(const UhpPoint& p);

/// acosh(||g1^-1 g g2||^2 / 2) = d(g1 i, g g2 i).
double distance_via_norms(const Isometry& g1, const Isometry& g, const Isometry& g2);

UhpPoint disk_uhp(const DiskPoint& w);
DiskPoint uhp_disk(const UhpPoint& z);

/// Legs of the right triangle (O, D, A) with equal acute angles beta:
/// acosh(cot beta).  Requires 0 < beta < pi/4.
double right_triangle_leg(double beta);
/// Hypotenuse acosh(cot^2 beta) of the same triangle.
double right_triangle_hyp(double beta);

/// Area 2 pi (cosh r - 1) of a hyperbolic disk of radius r >= 0.
double disk_area(double r);

/// Central angle subtending a chord of length dist on a circle of radius r:
/// 2 asin(sinh(dist/2) / sinh(r)).  DomainError when dist > 2r.
double chord_half_angle(double dist, double r);

/// Rotation about i by the given disk angle: the disk image of every point
/// turns by `angle` counterclockwise.
Isometry rotation_about_i(double angle);

/// Orientation-preserving isometry sending A to C and B to D.  Requires
/// |d(A,B) - d(C,D)| <= 1e-9.
Isometry isometry_from_segments(const UhpPoint& A, const UhpPoint& B, const UhpPoint& C,
                                const UhpPoint& D);

/// Point at fraction s of the way along the geodesic segment from A to B.
UhpPoint geodesic_point(const UhpPoint& A, const UhpPoint& B, double s);

/// Point at hyperbolic distance r from center in the direction whose disk
/// angle (after moving center to i by point_to_isometry) is theta.
UhpPoint point_on_circle(const UhpPoint& center, double r, double theta);

/// Angle at vertex V between the geodesics V->A and V->B, in [0, pi].
double angle_at(const UhpPoint& V, const UhpPoint& A, const UhpPoint& B);

}  // namespace geocover

#pragma once

#include <cmath>
#include <initializer_list>

#include "chyp/common.hpp"

namespace chyp {

/// Homogeneous coordinates (z_0, ..., z_n) in C^{n+1}. Index 0 is the
/// time-like slot of the form.
class HVector {
 public:
  explicit HVector(CVector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw DimensionError("homogeneous vector needs at least 2 coordinates");
    if (!coords_.allFinite()) throw DegenerateInput("non-finite coordinate");
  }

  HVector(std::initializer_list<Complexd> coords)
      : HVector(CVector(Eigen::Map<const CVector>(coords.begin(), Eigen::Index(coords.size())))) {}

  int dim_n() const { return int(coords_.size()) - 1; }
  const CVector& coords() const { return coords_; }
  Complexd operator[](int i) const { return coords_(i); }
  double norm() const { return coords_.norm(); }
  bool is_zero() const { return coords_.isZero(0.0); }

 private:
  CVector coords_;
};

enum class PointTag { Negative, Null, Positive };

struct PointClass {
  PointTag tag;
  double value;  // Re form(z, z)
};

enum class Region { Interior, Boundary, Exterior };

inline std::string to_string(PointTag t) {
  switch (t) {
    case PointTag::Negative: return "Negative";
    case PointTag::Null: return "Null";
    case PointTag::Positive: return "Positive";
  }
  return "?";
}

inline std::string to_string(Region r) {
  switch (r) {
    case Region::Interior: return "Interior";
    case Region::Boundary: return "Boundary";
    case Region::Exterior: return "Exterior";
  }
  return "?";
}

/// A point of the affine chart z_0 = 1, i.e. of C^n containing the closed
/// unit ball, or the distinguished point at infinity P(0,1,0,...,0).
class BallPoint {
 public:
  BallPoint(CVector affine, double tol_null = ToleranceConfig{}.tol_null)
      : affine_(std::move(affine)) {
    if (affine_.size() < 1) throw DimensionError("ball point needs n >= 1 coordinates");
    if (!affine_.allFinite()) throw DegenerateInput("non-finite ball coordinate");
    const double s = affine_.squaredNorm();
    if (std::abs(s - 1.0) <= tol_null)
      region_ = Region::Boundary;
    else
      region_ = s < 1.0 ? Region::Interior : Region::Exterior;
  }

  BallPoint(std::initializer_list<Complexd> affine)
      : BallPoint(CVector(Eigen::Map<const CVector>(affine.begin(), Eigen::Index(affine.size())))) {}

  static BallPoint infinity(int n) {
    BallPoint p(CVector::Zero(n));
    p.at_infinity_ = true;
    p.region_ = Region::Exterior;
    return p;
  }

  /// Radial projection of a nonzero affine vector onto the unit sphere.
  static BallPoint on_sphere(const CVector& direction) {
    const double r = direction.norm();
    if (!(r > 0.0)) throw DegenerateInput("cannot project the origin onto the sphere");
    BallPoint p(CVector(direction / r));
    p.region_ = Region::Boundary;
    return p;
  }

  int dim_n() const { return int(affine_.size()); }
  bool at_infinity() const { return at_infinity_; }
  Region region() const { return region_; }
  const CVector& affine() const { return affine_; }
  double squared_norm() const { return affine_.squaredNorm(); }

 private:
  CVector affine_;
  bool at_infinity_ = false;
  Region region_ = Region::Interior;
};

/// Gram matrix diag(-1, 1, ..., 1) of the signature (1, n) form.
inline CMatrix form_matrix(int n) {
  CMatrix j = CMatrix::Identity(n + 1, n + 1);
  j(0, 0) = -1.0;
  return j;
}

/// -conj(z_0) w_0 + sum_{j>=1} conj(z_j) w_j
inline Complexd form_eval(const CVector& z, const CVector& w) {
  if (z.size() != w.size()) throw DimensionError("form_eval: dimension mismatch");
  return z.dot(w) - 2.0 * std::conj(z(0)) * w(0);
}

inline Complexd form_eval(const HVector& z, const HVector& w) {
  return form_eval(z.coords(), w.coords());
}

inline PointClass classify_point(const CVector& z, double tol_null = ToleranceConfig{}.tol_null) {
  const double scale = z.squaredNorm();
  if (!(scale > 0.0)) throw DegenerateInput("classify_point: zero vector");
  const Complexd v = form_eval(z, z);
  if (std::abs(v.imag()) > tol_null * scale)
    throw InternalInvariantError("form value on the diagonal is not real");
  PointTag tag = PointTag::Null;
  if (v.real() < -tol_null * scale)
    tag = PointTag::Negative;
  else if (v.real() > tol_null * scale)
    tag = PointTag::Positive;
  return {tag, v.real()};
}

inline PointClass classify_point(const HVector& z, double tol_null = ToleranceConfig{}.tol_null) {
  return classify_point(z.coords(), tol_null);
}

inline BallPoint project(const CVector& z, double tol_null = ToleranceConfig{}.tol_null) {
  const double nz = z.norm();
  if (!(nz > 0.0)) throw DegenerateInput("project: zero vector");
  const int n = int(z.size()) - 1;
  if (std::abs(z(0)) > tol_null * nz) return BallPoint(CVector(z.tail(n) / z(0)), tol_null);
  if (classify_point(z, tol_null).tag == PointTag::Negative)
    throw InternalInvariantError("negative vector with vanishing time-like coordinate");
  return BallPoint::infinity(n);
}

inline BallPoint project(const HVector& z, double tol_null = ToleranceConfig{}.tol_null) {
  return project(z.coords(), tol_null);
}

inline HVector lift(const BallPoint& b) {
  const int n = b.dim_n();
  CVector z(n + 1);
  if (b.at_infinity()) {
    z.setZero();
    z(1) = 1.0;
  } else {
    z(0) = 1.0;
    z.tail(n) = b.affine();
  }
  return HVector(std::move(z));
}

/// Euclidean distance in C^n; the closed ball with this metric is compact.
inline double chordal_distance(const BallPoint& a, const BallPoint& b) {
  if (a.at_infinity() || b.at_infinity())
    throw InfinityNotSupported("chordal distance is defined on the affine chart only");
  if (a.dim_n() != b.dim_n()) throw DimensionError("chordal_distance: dimension mismatch");
  return (a.affine() - b.affine()).norm();
}

/// Homogeneous Cayley matrix taking the ball to the Siegel domain
///   Re(w_1) > 1/2 sum_{j>=2} |w_j|^2 :
///   (z_0, z_1, z_2, ..., z_n) -> (z_0 - z_1, z_0 + z_1, sqrt2 z_2, ..., sqrt2 z_n).
/// In affine terms w_1 = (1 + b_1)/(1 - b_1), w_j = sqrt2 b_j / (1 - b_1), and
/// Re(w_1) - 1/2 sum |w_j|^2 = (1 - |b|^2) / |1 - b_1|^2. The pole is b = (1,0,...,0).
inline CMatrix cayley_matrix(int n) {
  CMatrix c = CMatrix::Zero(n + 1, n + 1);
  c(0, 0) = 1.0;
  c(0, 1) = -1.0;
  c(1, 0) = 1.0;
  c(1, 1) = 1.0;
  for (int j = 2; j <= n; ++j) c(j, j) = std::sqrt(2.0);
  return c;
}

/// Re(w_1) - 1/2 sum_{j>=2} |w_j|^2; positive exactly on the Siegel domain.
inline double siegel_height(const CVector& w) {
  return w(0).real() - 0.5 * w.tail(w.size() - 1).squaredNorm();
}

inline CVector cayley_to_siegel(const BallPoint& b, double tol_null = ToleranceConfig{}.tol_null) {
  if (b.at_infinity()) throw InfinityNotSupported("cayley_to_siegel: point at infinity");
  if (b.region() == Region::Exterior) throw PreconditionError("cayley_to_siegel: point outside the closed ball");
  const int n = b.dim_n();
  CVector pole = CVector::Zero(n);
  pole(0) = 1.0;
  if ((b.affine() - pole).norm() <= std::sqrt(tol_null)) throw PoleError("cayley_to_siegel: Cayley pole");
  const CVector z = cayley_matrix(n) * lift(b).coords();
  return z.tail(n) / z(0);
}

}  // namespace chyp

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "chyp/hermitian.hpp"

namespace chyp {

/// Largest singular value.
inline double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double matrix_norm(const CMatrix& m, NormKind kind) {
  return kind == NormKind::Operator ? operator_norm(m) : m.norm();
}

/// An element of U(1,n): an (n+1)x(n+1) matrix M with M* J M = J.
class Isometry {
 public:
  /// Wraps a matrix that is known to preserve the form (products and
  /// adjoints of validated elements). Use verify_unitary for outside input.
  static Isometry trusted(CMatrix m) { return Isometry(std::move(m)); }

  int dim_n() const { return int(m_.rows()) - 1; }
  const CMatrix& matrix() const { return m_; }
  Complexd operator()(int i, int j) const { return m_(i, j); }

 private:
  explicit Isometry(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

inline double unitary_residual(const CMatrix& m) {
  const CMatrix j = form_matrix(int(m.rows()) - 1);
  return operator_norm(m.adjoint() * j * m - j);
}

inline Isometry verify_unitary(const CMatrix& m, const ToleranceConfig& cfg = {}) {
  if (m.rows() != m.cols()) throw DimensionError("isometry matrix must be square");
  if (m.rows() < 2) throw DimensionError("isometry matrix must be at least 2x2");
  if (!m.allFinite()) throw DegenerateInput("non-finite matrix entry");
  const double residual = unitary_residual(m);
  const double scale = operator_norm(m);
  const double allowed = cfg.tol_unitary * scale * scale;
  if (!(residual <= allowed)) throw NotUnitaryError(residual, allowed);
  return Isometry::trusted(m);
}

inline Isometry identity(int n) { return Isometry::trusted(CMatrix::Identity(n + 1, n + 1)); }

inline void require_same_dim(const Isometry& f, const Isometry& g) {
  if (f.dim_n() != g.dim_n()) throw DimensionError("isometries of different dimension");
}

inline Isometry compose(const Isometry& f, const Isometry& g) {
  require_same_dim(f, g);
  return Isometry::trusted(f.matrix() * g.matrix());
}

/// Form adjoint J M* J, which equals the inverse on U(1,n).
inline Isometry inverse(const Isometry& f) {
  CMatrix a = f.matrix().adjoint();
  a.row(0) *= -1.0;
  a.col(0) *= -1.0;
  return Isometry::trusted(std::move(a));
}

inline Isometry commutator(const Isometry& f, const Isometry& g) {
  require_same_dim(f, g);
  return Isometry::trusted(f.matrix() * g.matrix() * inverse(f).matrix() * inverse(g).matrix());
}

inline Isometry power(const Isometry& f, int k) {
  const Isometry base = k < 0 ? inverse(f) : f;
  CMatrix acc = CMatrix::Identity(f.matrix().rows(), f.matrix().cols());
  for (int i = 0; i < std::abs(k); ++i) acc = acc * base.matrix();
  return Isometry::trusted(std::move(acc));
}

/// N(f) = ||f - I|| on the given U(1,n) representative.
inline double norm_n(const Isometry& f, NormKind kind = NormKind::Operator) {
  const CMatrix d = f.matrix() - CMatrix::Identity(f.matrix().rows(), f.matrix().cols());
  return matrix_norm(d, kind);
}

/// Unit scalar lambda with f ~ lambda g, read off the largest-modulus entry of g.
inline Complexd phase_between(const Isometry& f, const Isometry& g) {
  Eigen::Index r = 0, c = 0;
  g.matrix().cwiseAbs().maxCoeff(&r, &c);
  const Complexd ratio = f(int(r), int(c)) / g(int(r), int(c));
  const double a = std::abs(ratio);
  return a > 0.0 && std::isfinite(a) ? ratio / a : Complexd(1.0);
}

/// Equality in PU(1,n): ||f - lambda g||_F <= tol_identity ||g||_F for the
/// unit scalar lambda aligning the largest entry of g.
inline bool pu_equal(const Isometry& f, const Isometry& g, const ToleranceConfig& cfg = {}) {
  require_same_dim(f, g);
  const Complexd lambda = phase_between(f, g);
  return (f.matrix() - lambda * g.matrix()).norm() <= cfg.tol_identity * g.matrix().norm();
}

/// The representative of f's PU class whose (0,0) entry is real positive.
/// |f_00| >= 1 on U(1,n), so the phase is always defined. This is the
/// alignment pu_equal(f, I) uses.
inline Isometry phase_normalized(const Isometry& f) {
  const Complexd a = f(0, 0);
  CMatrix m = f.matrix() * (std::conj(a) / std::abs(a));
  m(0, 0) = std::abs(a);
  return Isometry::trusted(std::move(m));
}

/// Distance of the PU class of f from the identity, measured on the
/// phase-normalized representative.
inline double norm_n_projective(const Isometry& f, NormKind kind = NormKind::Operator) {
  return norm_n(phase_normalized(f), kind);
}

/// Rescales f by a unit scalar so that det = 1 (principal (n+1)-th root).
/// Returns f unchanged when the determinant is already 1 within tol.
inline Isometry det_one_representative(const Isometry& f, double tol = 1e-12) {
  const Complexd det = f.matrix().determinant();
  if (std::abs(det - 1.0) <= tol) return f;
  const double theta = std::arg(det) / double(f.dim_n() + 1);
  return Isometry::trusted(f.matrix() * std::polar(1.0, -theta));
}

/// Action on the closed ball (and its exterior) in the affine chart.
inline BallPoint apply(const Isometry& f, const BallPoint& b, double tol_null = ToleranceConfig{}.tol_null) {
  if (b.dim_n() != f.dim_n()) throw DimensionError("apply: dimension mismatch");
  return project(CVector(f.matrix() * lift(b).coords()), tol_null);
}

/// Boundary action; the image is snapped back onto the unit sphere.
inline BallPoint apply_boundary(const Isometry& f, const BallPoint& b) {
  const BallPoint image = apply(f, b);
  if (image.at_infinity()) throw InternalInvariantError("boundary point mapped to infinity");
  return BallPoint::on_sphere(image.affine());
}

/// L_t: the boost cosh t, sinh t acting on the (z_0, z_1) plane.
inline Isometry boost(int n, double t) {
  CMatrix m = CMatrix::Identity(n + 1, n + 1);
  m(0, 0) = m(1, 1) = std::cosh(t);
  m(0, 1) = m(1, 0) = std::sinh(t);
  return Isometry::trusted(std::move(m));
}

/// diag(phases); every unit-modulus diagonal matrix preserves the form.
inline Isometry diagonal(const std::vector<Complexd>& phases, const ToleranceConfig& cfg = {}) {
  CVector d(Eigen::Index(phases.size()));
  for (std::size_t i = 0; i < phases.size(); ++i) d(Eigen::Index(i)) = phases[i];
  return verify_unitary(CMatrix(d.asDiagonal()), cfg);
}

inline Complexd unit(double angle) { return std::polar(1.0, angle); }

}  // namespace chyp

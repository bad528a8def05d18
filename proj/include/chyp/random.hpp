#pragma once

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "chyp/isometry.hpp"

namespace chyp {

/// Haar-distributed unitary k x k matrix (QR of a complex Gaussian matrix
/// with the phases of R's diagonal divided out).
inline CMatrix random_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix z(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z(i, j) = Complexd(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(k, k);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// Random element of the maximal compact U(1) x U(n).
inline Isometry random_compact(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  m(0, 0) = unit(angle(rng));
  m.bottomRightCorner(n, n) = random_unitary(n, rng);
  return Isometry::trusted(std::move(m));
}

/// K1 L_t K2 with t uniform in [-max_boost, max_boost]; every element of
/// U(1,n) has this form.
inline Isometry random_isometry(int n, double max_boost, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(-max_boost, max_boost);
  const Isometry k1 = random_compact(n, rng);
  const Isometry k2 = random_compact(n, rng);
  return compose(compose(k1, boost(n, t(rng))), k2);
}

/// exp(X) for a random X in the Lie algebra u(1,n) (X = J A, A skew-Hermitian)
/// scaled so that ||exp(X) - I|| <= delta in operator norm.
inline Isometry random_near_identity(int n, double delta, std::mt19937_64& rng) {
  const int k = n + 1;
  if (!(delta > 0.0)) return identity(n);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  CMatrix a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = Complexd(gauss(rng), gauss(rng));
  a = 0.5 * (a - a.adjoint()).eval();
  CMatrix x = form_matrix(n) * a;
  const double nx = operator_norm(x);
  if (!(nx > 0.0)) return identity(n);
  x *= std::log1p(delta) * u01(rng) / nx;
  return Isometry::trusted(x.exp());
}

}  // namespace chyp

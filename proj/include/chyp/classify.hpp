#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "chyp/isometry.hpp"

namespace chyp {

struct FixedCardinality {
  bool infinite = false;
  int count = 0;  // meaningful when !infinite

  static FixedCardinality finite(int k) { return {false, k}; }
  static FixedCardinality infinity() { return {true, 0}; }
  bool operator==(const FixedCardinality&) const = default;
};

inline std::string to_string(FixedCardinality c) {
  return c.infinite ? "Infinite" : "Finite(" + std::to_string(c.count) + ")";
}

struct BoundaryFixedSet {
  std::vector<BallPoint> points;  // representatives of the finite part
  FixedCardinality cardinality;
  bool interior_fixed_exists = false;
};

struct IsometryClass {
  IsometryTag tag = IsometryTag::Identity;
  std::vector<BallPoint> boundary_fixed;
  bool interior_fixed_exists = false;
  FixedCardinality fixed_cardinality;
  std::optional<BallPoint> attracting;
  std::optional<BallPoint> repelling;
  /// Eigenvalues with the (lambda, 1/conj(lambda)) pairing enforced, sorted
  /// by decreasing modulus then argument.
  std::vector<Complexd> eigenvalues;
};

namespace detail {

struct EigenCluster {
  Complexd mean;
  std::vector<int> members;
  bool semisimple = true;
  CMatrix basis;  // orthonormal basis of the geometric eigenspace
};

struct Spectrum {
  std::vector<Complexd> values;
  CMatrix vectors;  // unit columns
  std::vector<EigenCluster> clusters;
};

inline double sin_angle(const CVector& a, const CVector& b) {
  const double c = std::min(1.0, std::abs(a.dot(b)));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

inline double condition_number(const CMatrix& v) {
  Eigen::JacobiSVD<CMatrix> svd(v);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

inline int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

/// Eigen-decomposition with eigenvalues grouped into clusters. Two
/// eigenvalues share a cluster when they agree to tol_eig (relative), or
/// agree to sqrt(tol_eig) with nearly parallel eigenvectors: the signature
/// of a rounding-perturbed Jordan block.
inline Spectrum analyze_spectrum(const CMatrix& m, double tol_eig) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, true);
  if (solver.info() != Eigen::Success)
    throw NumericallyAmbiguous({}, "eigen-decomposition did not converge");
  Spectrum s;
  const int k = int(m.rows());
  s.vectors = solver.eigenvectors();
  for (int i = 0; i < k; ++i) {
    s.values.push_back(solver.eigenvalues()(i));
    s.vectors.col(i).normalize();
  }

  const double loose = std::sqrt(tol_eig);
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double scale = std::max({1.0, std::abs(s.values[i]), std::abs(s.values[j])});
      const double d = std::abs(s.values[i] - s.values[j]) / scale;
      const bool linked =
          d <= tol_eig || (d <= loose && sin_angle(s.vectors.col(i), s.vectors.col(j)) <= loose);
      if (linked) parent[find_root(parent, i)] = find_root(parent, j);
    }

  std::vector<int> cluster_of(k, -1);
  for (int i = 0; i < k; ++i) {
    const int r = find_root(parent, i);
    if (cluster_of[r] < 0) {
      cluster_of[r] = int(s.clusters.size());
      s.clusters.emplace_back();
    }
    s.clusters[cluster_of[r]].members.push_back(i);
  }

  for (auto& c : s.clusters) {
    Complexd sum = 0.0;
    CMatrix v(k, Eigen::Index(c.members.size()));
    for (std::size_t t = 0; t < c.members.size(); ++t) {
      sum += s.values[c.members[t]];
      v.col(Eigen::Index(t)) = s.vectors.col(c.members[t]);
    }
    c.mean = sum / double(c.members.size());
    c.semisimple = c.members.size() == 1 || condition_number(v) <= 1.0 / tol_eig;
    if (c.semisimple) {
      Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeThinU);
      c.basis = svd.matrixU();
    } else {
      // Geometric eigenspace: numerical kernel of M - mean I.
      const CMatrix shifted = m - c.mean * CMatrix::Identity(k, k);
      Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double thr = tol_eig * std::max(1.0, sv(0));
      int dim = 0;
      for (int i = 0; i < k; ++i)
        if (sv(i) <= thr) ++dim;
      dim = std::clamp(dim, 1, int(c.members.size()) - 1);
      c.basis = svd.matrixV().rightCols(dim);
    }
  }
  return s;
}

struct Contribution {
  std::vector<BallPoint> points;
  bool infinite = false;
  bool interior = false;
};

/// Boundary fixed points contributed by one eigenspace: the projectivized
/// null cone of the form restricted to it.
inline Contribution eigenspace_contribution(const CMatrix& basis, double tol) {
  Contribution out;
  const CMatrix gram = basis.adjoint() * form_matrix(int(basis.rows()) - 1) * basis;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  const auto& ev = es.eigenvalues();
  int neg = 0, zero = 0;
  int zero_index = -1;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol)
      ++neg;
    else if (ev(i) <= tol) {
      ++zero;
      zero_index = i;
    }
  }
  const int dim = int(basis.cols());
  if (neg > 0) {
    out.interior = true;
    out.infinite = dim >= 2;
  } else if (zero >= 2) {
    out.infinite = true;
  } else if (zero == 1) {
    const CVector v = basis * es.eigenvectors().col(zero_index);
    const BallPoint p = project(v, tol);
    if (p.at_infinity()) throw InternalInvariantError("null eigenvector at infinity");
    out.points.push_back(BallPoint::on_sphere(p.affine()));
  }
  return out;
}

inline Complexd pair_average(Complexd mu) {
  const double r2 = std::norm(mu);
  return r2 > 0.0 ? 0.5 * (mu + mu / r2) : mu;
}

inline std::vector<Complexd> sorted_eigenvalues(std::vector<Complexd> v) {
  std::sort(v.begin(), v.end(), [](Complexd a, Complexd b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) > std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return v;
}

inline std::string describe(const std::vector<IsometryTag>& tags) {
  std::ostringstream os;
  for (std::size_t i = 0; i < tags.size(); ++i) os << (i ? "/" : "") << to_string(tags[i]);
  return os.str();
}

}  // namespace detail

/// Eigen-analysis classification of f as an element of PU(1,n).
///
/// Identity if f is PU-equal to I. Loxodromic if an eigenvalue cluster has
/// modulus > 1 + tol_eig; the attracting point is the dominant eigenvector of
/// f, the repelling point the dominant eigenvector of f^{-1}, and both must be
/// null. Otherwise Elliptic when f is diagonalizable with an eigenspace that
/// meets the negative cone, Parabolic when it is not diagonalizable and a
/// single null eigen-direction is found. Everything else raises
/// NumericallyAmbiguous with the candidate tags.
inline IsometryClass classify_isometry(const Isometry& f, const ToleranceConfig& cfg = {}) {
  using detail::Contribution;
  IsometryClass out;
  const int k = f.dim_n() + 1;

  if (pu_equal(f, identity(f.dim_n()), cfg)) {
    out.tag = IsometryTag::Identity;
    out.interior_fixed_exists = true;
    out.fixed_cardinality = FixedCardinality::infinity();
    out.eigenvalues.assign(std::size_t(k), phase_between(f, identity(f.dim_n())));
    return out;
  }

  const double tol = cfg.tol_eig;
  const double loose = std::sqrt(tol);
  const detail::Spectrum spec = detail::analyze_spectrum(f.matrix(), tol);

  int big = -1, big_count = 0;
  for (int c = 0; c < int(spec.clusters.size()); ++c)
    if (std::abs(spec.clusters[c].mean) > 1.0 + tol) {
      ++big_count;
      if (big < 0 || std::abs(spec.clusters[c].mean) > std::abs(spec.clusters[big].mean)) big = c;
    }

  if (big >= 0) {
    const auto ambiguous = [](const std::string& why) {
      return NumericallyAmbiguous({IsometryTag::Loxodromic, IsometryTag::Parabolic}, why);
    };
    const auto& cl = spec.clusters[big];
    if (big_count != 1 || cl.members.size() != 1) throw ambiguous("expanding eigenvalue is not simple");
    const CVector va = spec.vectors.col(cl.members[0]);
    const Complexd mu_a = spec.values[cl.members[0]];

    // Repelling direction from f^{-1}, which is exact on U(1,n) and keeps the
    // contracting eigenvector accurate for large matrices.
    Eigen::ComplexEigenSolver<CMatrix> inv_solver(inverse(f).matrix(), true);
    Eigen::Index ir = 0;
    inv_solver.eigenvalues().cwiseAbs().maxCoeff(&ir);
    const Complexd nu = inv_solver.eigenvalues()(ir);
    CVector vr = inv_solver.eigenvectors().col(ir);
    vr.normalize();
    if (std::abs(std::abs(nu) - std::abs(mu_a)) > loose * std::abs(mu_a))
      throw ambiguous("expanding eigenvalues of f and f^-1 do not pair");

    const auto ca = classify_point(va, tol);
    const auto cr = classify_point(vr, tol);
    if (ca.tag != PointTag::Null || cr.tag != PointTag::Null)
      throw ambiguous("loxodromic eigenvectors are not null");
    const BallPoint pa = project(va, tol), pr = project(vr, tol);
    if (pa.at_infinity() || pr.at_infinity()) throw ambiguous("fixed point at infinity");
    const BallPoint att = BallPoint::on_sphere(pa.affine());
    const BallPoint rep = BallPoint::on_sphere(pr.affine());
    if (chordal_distance(att, rep) <= loose) throw ambiguous("attracting and repelling points coincide");

    out.tag = IsometryTag::Loxodromic;
    out.attracting = att;
    out.repelling = rep;
    out.boundary_fixed = {att, rep};
    out.fixed_cardinality = FixedCardinality::finite(2);
    out.interior_fixed_exists = false;

    const Complexd lam_a = 0.5 * (mu_a + std::conj(nu));
    std::vector<Complexd> ev{lam_a, 1.0 / std::conj(lam_a)};
    // The remaining eigenvalues lie on the unit circle.
    std::vector<double> dist(spec.values.size());
    for (std::size_t i = 0; i < spec.values.size(); ++i)
      dist[i] = std::abs(std::abs(spec.values[i]) - 1.0);
    std::vector<int> order(spec.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    for (int i = 0; i < k - 2; ++i) ev.push_back(detail::pair_average(spec.values[order[i]]));
    out.eigenvalues = detail::sorted_eigenvalues(std::move(ev));
    return out;
  }

  std::vector<Complexd> ev;
  for (auto mu : spec.values) ev.push_back(detail::pair_average(mu));
  out.eigenvalues = detail::sorted_eigenvalues(std::move(ev));

  bool diagonalizable = true;
  Contribution total;
  for (const auto& c : spec.clusters) {
    diagonalizable = diagonalizable && c.semisimple;
    const Contribution part = detail::eigenspace_contribution(c.basis, c.semisimple ? tol : loose);
    total.interior = total.interior || part.interior;
    total.infinite = total.infinite || part.infinite;
    total.points.insert(total.points.end(), part.points.begin(), part.points.end());
  }
  out.boundary_fixed = total.points;
  out.interior_fixed_exists = total.interior;
  out.fixed_cardinality =
      total.infinite ? FixedCardinality::infinity() : FixedCardinality::finite(int(total.points.size()));

  const std::vector<IsometryTag> both{IsometryTag::Elliptic, IsometryTag::Parabolic};
  if (diagonalizable) {
    if (!total.interior) throw NumericallyAmbiguous(both, "diagonalizable but no negative eigen-direction");
    out.tag = IsometryTag::Elliptic;
    return out;
  }
  if (total.interior || total.infinite || total.points.size() != 1)
    throw NumericallyAmbiguous(both, "defective spectrum without a unique null eigen-direction");
  out.tag = IsometryTag::Parabolic;
  return out;
}

inline BoundaryFixedSet fixed_points_boundary(const Isometry& f, const ToleranceConfig& cfg = {}) {
  const IsometryClass c = classify_isometry(f, cfg);
  return {c.boundary_fixed, c.fixed_cardinality, c.interior_fixed_exists};
}

/// Smallest k <= k_max with f^k PU-equal to I; nullopt means the order
/// exceeds k_max (which includes infinite order).
inline std::optional<int> finite_order(const Isometry& f, int k_max = 200, const ToleranceConfig& cfg = {}) {
  if (k_max < 1) throw PreconditionError("finite_order: k_max must be >= 1");
  const Isometry id = identity(f.dim_n());
  CMatrix p = f.matrix();
  for (int k = 1; k <= k_max; ++k) {
    if (!p.allFinite() || p.norm() > 1e8) return std::nullopt;
    if (pu_equal(Isometry::trusted(p), id, cfg)) return k;
    p = p * f.matrix();
  }
  return std::nullopt;
}

}  // namespace chyp

#pragma once

#include <cmath>
#include <random>
#include <string>

#include "chyp/chyp.hpp"

namespace chyp::test {

inline std::string fixture(const std::string& name) { return std::string(CHYP_FIXTURES) + "/" + name; }

inline const double kE = std::exp(1.0);
inline const double kPi = std::acos(-1.0);
inline const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

inline CMatrix mat2(Complexd a, Complexd b, Complexd c, Complexd d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Isometry p0() { return verify_unitary(mat2({1, 1}, {0, -1}, {0, 1}, {1, -1})); }

inline Isometry conjugate(const Isometry& h, const Isometry& f) { return compose(compose(h, f), inverse(h)); }

inline Isometry rot(int n, std::vector<Complexd> phases) {
  phases.insert(phases.begin(), Complexd(1.0));
  if (int(phases.size()) != n + 1) throw DimensionError("rot: wrong number of phases");
  return diagonal(phases);
}

inline GroupInput group(int n, std::vector<std::pair<std::string, Isometry>> gens) {
  GroupInput g{n, {}};
  for (auto& [name, m] : gens) g.generators.push_back({name, m});
  return g;
}

/// Uniform random point on the unit sphere of C^n.
inline CVector random_sphere(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complexd(gauss(rng), gauss(rng));
  return v / v.norm();
}

inline CVector random_vector(int size, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  CVector v(size);
  for (int i = 0; i < size; ++i) v(i) = Complexd(gauss(rng), gauss(rng));
  return v;
}

/// Independent oracle for the largest singular value: power iteration on A*A.
inline double power_iteration_norm(const CMatrix& a) {
  CVector v = CVector::Ones(a.cols());
  double s = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const CVector w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    s = nw;
  }
  return std::sqrt(s);
}

}  // namespace chyp::test

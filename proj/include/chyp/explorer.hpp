#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "chyp/certificate.hpp"
#include "chyp/classify.hpp"
#include "chyp/enumerate.hpp"
#include "chyp/random.hpp"

namespace chyp {

struct NearIdentityHit {
  Word word;
  double n_value;
};

/// Nontrivial classes with N < epsilon on the phase-normalized
/// representative, ascending by N (shortlex on ties).
inline std::vector<NearIdentityHit> near_identity_search(const Enumeration& e, double epsilon,
                                                         NormKind norm = NormKind::Operator) {
  if (!(epsilon >= 0.0)) throw PreconditionError("near_identity_search: epsilon must be non-negative");
  std::vector<std::pair<double, std::size_t>> hits;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double v = norm_n_projective(e.element(i), norm);
    if (v < epsilon) hits.emplace_back(v, i);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<NearIdentityHit> out;
  for (const auto& [v, i] : hits) out.push_back({e.word(i), v});
  return out;
}

inline std::vector<NearIdentityHit> near_identity_search(const GroupInput& group, int max_len, double epsilon,
                                                         const ExplorerOptions& opts = {},
                                                         const ToleranceConfig& cfg = {},
                                                         NormKind norm = NormKind::Operator) {
  return near_identity_search(explore(group, max_len, opts, cfg), epsilon, norm);
}

inline std::optional<IsometryClass> try_classify(const Isometry& f, const ToleranceConfig& cfg) {
  try {
    return classify_isometry(f, cfg);
  } catch (const NumericallyAmbiguous&) {
    return std::nullopt;
  }
}

inline std::vector<double> flatten_points(const std::vector<BallPoint>& pts) {
  std::vector<double> out;
  for (const auto& p : pts)
    for (Eigen::Index j = 0; j < p.affine().size(); ++j) {
      out.push_back(p.affine()(j).real());
      out.push_back(p.affine()(j).imag());
    }
  return out;
}

/// True when some point of a lies farther than tol from every point of b,
/// or vice versa.
inline bool fixed_sets_differ(const std::vector<BallPoint>& a, const std::vector<BallPoint>& b, double tol) {
  const auto escapes = [tol](const std::vector<BallPoint>& x, const std::vector<BallPoint>& y) {
    for (const auto& p : x) {
      bool near = false;
      for (const auto& q : y) near = near || chordal_distance(p, q) <= tol;
      if (!near) return true;
    }
    return false;
  };
  return escapes(a, b) || escapes(b, a);
}

/// Looks for two non-elliptic elements of (assumed) infinite order whose
/// boundary fixed sets differ.
inline Certificate elementarity_check(const Enumeration& e, const ExplorerOptions& opts = {},
                                      const ToleranceConfig& cfg = {}) {
  struct Candidate {
    std::size_t index;
    std::vector<BallPoint> fixed;
  };
  // Every fixed set seen so far equals the first one, so one reference suffices.
  std::optional<Candidate> first;
  std::size_t non_elliptic = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto cls = try_classify(e.element(i), cfg);
    if (!cls) continue;
    if (cls->tag != IsometryTag::Parabolic && cls->tag != IsometryTag::Loxodromic) continue;
    if (finite_order(e.element(i), opts.k_max, cfg)) continue;
    ++non_elliptic;
    if (!first) {
      first = Candidate{i, cls->boundary_fixed};
      continue;
    }
    if (!fixed_sets_differ(first->fixed, cls->boundary_fixed, opts.point_tol)) continue;
    Certificate c;
    c.kind = CertificateKind::NonElementaryWitness;
    c.witnesses.push_back({"w1", e.word(first->index), flatten_points(first->fixed)});
    c.witnesses.push_back({"w2", e.word(i), flatten_points(cls->boundary_fixed)});
    c.narrative = "two non-elliptic elements with distinct boundary fixed sets";
    c.assumptions.push_back("infinite order assumed: no torsion found up to k_max = " + std::to_string(opts.k_max));
    return c;
  }
  Certificate c;
  c.narrative = "no pair of non-elliptic elements with distinct fixed sets among " + std::to_string(e.size()) +
                " classes (" + std::to_string(non_elliptic) + " non-elliptic)";
  c.assumptions.push_back("infinite order tested only up to k_max = " + std::to_string(opts.k_max));
  return c;
}

inline Certificate elementarity_check(const GroupInput& group, int max_len, const ExplorerOptions& opts = {},
                                      const ToleranceConfig& cfg = {}) {
  return elementarity_check(explore(group, max_len, opts, cfg), opts, cfg);
}

/// Open chordal ball on the boundary sphere.
struct BoundaryBall {
  BallPoint center;
  double radius;

  BoundaryBall(BallPoint c, double r) : center(std::move(c)), radius(r) {
    if (center.at_infinity() || center.region() != Region::Boundary)
      throw PreconditionError("boundary ball center must lie on the sphere");
    if (!(radius > 0.0 && radius < 2.0)) throw PreconditionError("boundary ball radius must be in (0, 2)");
  }
  bool contains(const BallPoint& p) const { return chordal_distance(center, p) < radius; }
};

struct TransportResult {
  Isometry element;  // h g^n with g = p^m f p^-m, h = q^r
  int m = 0, r = 0, n = 0;
  IsometryClass classification;
};

/// Builds a loxodromic element with one fixed point in each of two disjoint
/// boundary balls, following p^m f p^-m, then q^r, then q^r (p^m f p^-m)^n.
/// The result is re-classified and its fixed points checked before return.
inline TransportResult transport_loxodromic(const Isometry& p, const Isometry& q, const Isometry& f,
                                            const BoundaryBall& o1, const BoundaryBall& o2, int m_max, int r_max,
                                            int n_max, const ToleranceConfig& cfg = {}, double point_tol = 1e-6) {
  require_same_dim(p, q);
  require_same_dim(p, f);
  if (chordal_distance(o1.center, o2.center) <= o1.radius + o2.radius)
    throw PreconditionError("transport: the two balls are not disjoint");
  const auto loxodromic = [&](const Isometry& x, const char* name) {
    const IsometryClass c = classify_isometry(x, cfg);
    if (c.tag != IsometryTag::Loxodromic) throw PreconditionError(std::string("transport: ") + name + " is not loxodromic");
    return c;
  };
  const IsometryClass cp = loxodromic(p, "p");
  const IsometryClass cq = loxodromic(q, "q");
  const IsometryClass cf = loxodromic(f, "f");
  if (!o1.contains(*cp.attracting)) throw PreconditionError("transport: attracting point of p is not in O1");
  if (!o2.contains(*cq.attracting)) throw PreconditionError("transport: attracting point of q is not in O2");
  for (const auto& x : cf.boundary_fixed)
    if (chordal_distance(apply_boundary(p, x), x) <= point_tol)
      throw PreconditionError("transport: a fixed point of f is fixed by p");

  // Stage 1: g = p^m f p^-m has both fixed points p^m(alpha), p^m(beta) in O1.
  int m = 0;
  CMatrix pm = CMatrix::Identity(p.matrix().rows(), p.matrix().cols());
  for (;; ++m) {
    if (m > m_max) throw SearchExhausted("m");
    const Isometry pmi = Isometry::trusted(pm);
    if (o1.contains(apply_boundary(pmi, *cf.attracting)) && o1.contains(apply_boundary(pmi, *cf.repelling))) break;
    pm = pm * p.matrix();
  }
  const Isometry pm_iso = Isometry::trusted(pm);
  const Isometry g = compose(compose(pm_iso, f), inverse(pm_iso));
  const BallPoint alpha1 = apply_boundary(pm_iso, *cf.attracting);

  // Stage 2: h = q^r maps alpha1 into O2.
  int r = 1;
  CMatrix qr = q.matrix();
  for (;; ++r) {
    if (r > r_max) throw SearchExhausted("r");
    if (o2.contains(apply_boundary(Isometry::trusted(qr), alpha1))) break;
    qr = qr * q.matrix();
  }
  const Isometry h = Isometry::trusted(qr);

  // Stage 3: h g^n loxodromic with a fixed point in each ball.
  CMatrix gn = g.matrix();
  for (int n = 1; n <= n_max; ++n, gn = gn * g.matrix()) {
    const Isometry cand = Isometry::trusted(h.matrix() * gn);
    const auto cls = try_classify(cand, cfg);
    if (!cls || cls->tag != IsometryTag::Loxodromic) continue;
    const auto& a = *cls->attracting;
    const auto& b = *cls->repelling;
    if ((o1.contains(a) && o2.contains(b)) || (o1.contains(b) && o2.contains(a))) {
      TransportResult res{cand, m, r, n, *cls};
      const IsometryClass check = classify_isometry(res.element, cfg);
      if (check.tag != IsometryTag::Loxodromic)
        throw InternalInvariantError("transport result failed re-classification");
      return res;
    }
  }
  throw SearchExhausted("n");
}

/// Fraction of `trials` random perturbations f exp(X), ||exp(X) - I|| <= delta,
/// that classify as loxodromic.
inline double perturbation_stability(const Isometry& f, double delta, int trials, std::uint64_t seed,
                                     const ToleranceConfig& cfg = {}) {
  if (!(delta >= 0.0)) throw PreconditionError("perturbation_stability: delta must be non-negative");
  if (trials < 1) throw PreconditionError("perturbation_stability: need at least one trial");
  std::mt19937_64 rng(seed);
  int lox = 0;
  for (int t = 0; t < trials; ++t) {
    const Isometry e = random_near_identity(f.dim_n(), delta, rng);
    const auto cls = try_classify(compose(f, e), cfg);
    if (cls && cls->tag == IsometryTag::Loxodromic) ++lox;
  }
  return double(lox) / double(trials);
}

struct StabilizerElement {
  Word word;
  Isometry element;
  std::optional<int> order;  // nullopt: exceeds k_max
};

inline bool fixes_boundary_point(const Isometry& f, const BallPoint& x, double tol) {
  return chordal_distance(apply_boundary(f, x), x) <= tol;
}

/// Classes fixing both x0 and y0 (pointwise), identity included when the
/// group has generators.
inline std::vector<StabilizerElement> stabilizer_elements(const Enumeration& e, const BallPoint& x0,
                                                          const BallPoint& y0, const ExplorerOptions& opts = {},
                                                          const ToleranceConfig& cfg = {}) {
  if (x0.region() != Region::Boundary || y0.region() != Region::Boundary)
    throw PreconditionError("stabilizer_elements: points must lie on the boundary");
  if (chordal_distance(x0, y0) <= opts.point_tol) throw PreconditionError("stabilizer_elements: points coincide");
  std::vector<StabilizerElement> out;
  out.push_back({Word{}, identity(x0.dim_n()), 1});
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Isometry& f = e.element(i);
    if (fixes_boundary_point(f, x0, opts.point_tol) && fixes_boundary_point(f, y0, opts.point_tol))
      out.push_back({e.word(i), f, finite_order(f, opts.k_max, cfg)});
  }
  return out;
}

inline std::vector<StabilizerElement> stabilizer_elements(const GroupInput& group, const BallPoint& x0,
                                                          const BallPoint& y0, int max_len,
                                                          const ExplorerOptions& opts = {},
                                                          const ToleranceConfig& cfg = {}) {
  if (group.generators.empty()) return {};
  return stabilizer_elements(explore(group, max_len, opts, cfg), x0, y0, opts, cfg);
}

struct ConditionACandidate {
  Word word;
  Isometry element;
};

/// Finite-order elements with infinite boundary fixed set and N < epsilon.
/// Three or more with strictly decreasing N form ConditionAEvidence.
inline Certificate condition_a_scan(const std::vector<ConditionACandidate>& candidates, double epsilon,
                                    int k_max, const ToleranceConfig& cfg = {}) {
  if (!(epsilon > 0.0)) throw PreconditionError("condition_a_scan: epsilon must be positive");
  struct Hit {
    Word word;
    double n_value;
    int order;
  };
  std::vector<Hit> hits;
  std::size_t torsion = 0, infinite_fixed = 0;
  const Isometry id = candidates.empty() ? identity(1) : identity(candidates.front().element.dim_n());
  for (const auto& c : candidates) {
    if (pu_equal(c.element, id, cfg)) continue;
    const auto order = finite_order(c.element, k_max, cfg);
    if (!order) continue;
    ++torsion;
    const auto cls = try_classify(c.element, cfg);
    if (!cls || !cls->fixed_cardinality.infinite) continue;
    ++infinite_fixed;
    const double nv = norm_n_projective(c.element);
    if (nv < epsilon) hits.push_back({c.word, nv, *order});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.n_value > b.n_value; });
  std::vector<Hit> chain;
  for (const auto& h : hits)
    if (chain.empty() || h.n_value < chain.back().n_value - 1e-12) chain.push_back(h);

  Certificate cert;
  std::ostringstream os;
  os << candidates.size() << " classes scanned, " << torsion << " of finite order <= " << k_max << ", "
     << infinite_fixed << " of those with infinite fixed set, " << hits.size() << " with N < " << epsilon;
  if (chain.size() >= 3) {
    cert.kind = CertificateKind::ConditionAEvidence;
    for (const auto& h : chain) cert.witnesses.push_back({"torsion(order " + std::to_string(h.order) + ")", h.word, {h.n_value}});
    os << "; decreasing chain of length " << chain.size();
  }
  cert.narrative = os.str();
  cert.assumptions.push_back("finite shadow of a sequence converging to the identity");
  return cert;
}

inline Certificate condition_a_scan(const GroupInput& group, int max_len, double epsilon, int k_max,
                                    const ExplorerOptions& opts = {}, const ToleranceConfig& cfg = {}) {
  const Enumeration e = explore(group, max_len, opts, cfg);
  std::vector<ConditionACandidate> all;
  for (std::size_t i = 0; i < e.size(); ++i) all.push_back({e.word(i), e.element(i)});
  return condition_a_scan(all, epsilon, k_max, cfg);
}

/// Orbit points of p under the enumerated classes that come within
/// radial_cut of the sphere, radially projected onto it.
inline std::vector<BallPoint> limit_set_sample(const Enumeration& e, const BallPoint& p,
                                               const ExplorerOptions& opts = {}, const ToleranceConfig& cfg = {}) {
  if (p.at_infinity() || p.region() != Region::Interior)
    throw PreconditionError("limit_set_sample: base point must be interior");
  std::vector<BallPoint> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const BallPoint q = apply(e.element(i), p, cfg.tol_null);
    if (!q.at_infinity() && q.squared_norm() > 1.0 - opts.radial_cut) out.push_back(BallPoint::on_sphere(q.affine()));
  }
  return out;
}

inline std::vector<BallPoint> limit_set_sample(const GroupInput& group, int max_len, const BallPoint& p,
                                               const ExplorerOptions& opts = {}, const ToleranceConfig& cfg = {}) {
  return limit_set_sample(explore(group, max_len, opts, cfg), p, opts, cfg);
}

}  // namespace chyp

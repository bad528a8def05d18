#include <set>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace chyp;
using namespace chyp::test;

namespace {

struct Seeded {
  IsometryTag tag;
  Isometry element;
};

/// One of the three seed families, conjugated by a random element.
Seeded random_classed(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Isometry h = random_isometry(n, 1.5, rng);
  const int kind = int(rng() % 3);
  if (kind == 0) return {IsometryTag::Loxodromic, conjugate(h, boost(n, 0.2 + 2.0 * u(rng)))};
  if (kind == 1) {
    std::vector<Complexd> ph;
    for (int i = 0; i < n; ++i) ph.push_back(unit(0.3 + 5.5 * u(rng)));
    return {IsometryTag::Elliptic, conjugate(h, rot(n, ph))};
  }
  CMatrix m = CMatrix::Identity(n + 1, n + 1);
  m.topLeftCorner(2, 2) = p0().matrix();
  return {IsometryTag::Parabolic, conjugate(h, Isometry::trusted(m))};
}

Word random_word(int gens, int len, std::mt19937_64& rng) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) ls.push_back({int(rng() % unsigned(gens)), rng() % 2 ? 1 : -1});
  return Word(ls);
}

BallPoint random_ball_point(int n, double radius, std::mt19937_64& rng) {
  return BallPoint(CVector(random_sphere(n, rng) * radius));
}

double rel(Complexd a, Complexd b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("property: form is Hermitian and sesquilinear", "[property]") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 1000; ++t) {
    const int k = 2 + t % 4;
    const CVector z = random_vector(k, rng, 3.0), w = random_vector(k, rng, 3.0), v = random_vector(k, rng, 3.0);
    const Complexd a = random_vector(1, rng)(0), b = random_vector(1, rng)(0);
    CHECK(rel(form_eval(z, w), std::conj(form_eval(w, z))) <= 1e-12);
    CHECK(rel(form_eval(z, CVector(a * w + b * v)), a * form_eval(z, w) + b * form_eval(z, v)) <= 1e-12);
    CHECK(rel(form_eval(CVector(a * w + b * v), z), std::conj(a) * form_eval(w, z) + std::conj(b) * form_eval(v, z)) <=
          1e-12);
    CHECK(std::abs(form_eval(z, z).imag()) <= 1e-12 * std::max(1.0, z.squaredNorm()));
  }
}

TEST_CASE("property: isometries preserve the form", "[property]") {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = random_isometry(n, 2.0, rng);
    const CVector z = random_vector(n + 1, rng), w = random_vector(n + 1, rng);
    const CVector fz = f.matrix() * z, fw = f.matrix() * w;
    const double scale = std::max(1.0, fz.norm() * fw.norm());
    CHECK(std::abs(form_eval(fz, fw) - form_eval(z, w)) <= 1e-11 * scale);
  }
}

TEST_CASE("property: projectivization ignores scale", "[property]") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const BallPoint b = random_ball_point(n, 0.05 + 0.9 * double(t % 97) / 97.0, rng);
    const CVector z = lift(b).coords();
    const Complexd s = random_vector(1, rng)(0);
    CHECK(chordal_distance(project(CVector(s * z)), b) <= 1e-12);
    CHECK(classify_point(CVector(s * z)).tag == PointTag::Negative);
  }
}

TEST_CASE("property: interior points are exactly the negative vectors", "[property]") {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> radius(0.0, 2.0);
  for (int t = 0; t < 10000; ++t) {
    const int n = 1 + t % 4;
    const double r = radius(rng);
    if (std::abs(r - 1.0) < 1e-6) continue;
    const CVector affine = random_sphere(n, rng) * r;
    CVector z(n + 1);
    z(0) = 1.0;
    z.tail(n) = affine;
    const bool interior = BallPoint(affine).region() == Region::Interior;
    CHECK(interior == (classify_point(z).tag == PointTag::Negative));
    CHECK((BallPoint(affine).region() == Region::Exterior) == (classify_point(z).tag == PointTag::Positive));
  }
}

TEST_CASE("property: class is invariant under conjugation", "[property]") {
  std::mt19937_64 rng(105);
  int ambiguous = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const Seeded s = random_classed(n, rng);
    const Isometry h = random_isometry(n, 1.0, rng);
    try {
      CHECK(classify_isometry(conjugate(h, s.element)).tag == s.tag);
    } catch (const NumericallyAmbiguous&) {
      ++ambiguous;
    }
  }
  CHECK(ambiguous <= 1);
}

TEST_CASE("property: fixed points move with conjugation", "[property]") {
  std::mt19937_64 rng(106);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = conjugate(random_isometry(n, 1.0, rng), boost(n, 0.5 + 0.01 * t));
    const Isometry h = random_isometry(n, 1.0, rng);
    const IsometryClass a = classify_isometry(f);
    const IsometryClass b = classify_isometry(conjugate(h, f));
    REQUIRE(a.tag == IsometryTag::Loxodromic);
    REQUIRE(b.tag == IsometryTag::Loxodromic);
    CHECK(chordal_distance(apply_boundary(h, *a.attracting), *b.attracting) <= 1e-6);
    CHECK(chordal_distance(apply_boundary(h, *a.repelling), *b.repelling) <= 1e-6);
  }
}

TEST_CASE("property: loxodromic forward orbits converge to the attracting point", "[property]") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = conjugate(random_isometry(n, 1.0, rng), boost(n, 1.0 + 0.01 * t));
    const IsometryClass c = classify_isometry(f);
    REQUIRE(c.tag == IsometryTag::Loxodromic);
    BallPoint x = BallPoint::on_sphere(random_sphere(n, rng));
    if (chordal_distance(x, *c.repelling) < 1e-2) continue;
    for (int k = 0; k < 40; ++k) x = apply_boundary(f, x);
    CHECK(chordal_distance(x, *c.attracting) <= 1e-6);
  }
}

TEST_CASE("property: inverse swaps attracting and repelling points", "[property]") {
  std::mt19937_64 rng(108);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = conjugate(random_isometry(n, 1.0, rng), boost(n, 0.3 + 0.01 * t));
    const IsometryClass a = classify_isometry(f), b = classify_isometry(inverse(f));
    CHECK(chordal_distance(*a.attracting, *b.repelling) <= 1e-6);
    CHECK(chordal_distance(*a.repelling, *b.attracting) <= 1e-6);
  }
}

TEST_CASE("property: N is subadditive up to the product term", "[property]") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = random_isometry(n, 1.0, rng), g = random_isometry(n, 1.0, rng);
    const double nf = norm_n(f), ng = norm_n(g);
    CHECK(norm_n(compose(f, g)) <= nf + ng + nf * ng + 1e-10 * (1 + nf) * (1 + ng));
    CHECK(norm_n(f, NormKind::Operator) <= norm_n(f, NormKind::Frobenius) + 1e-12);
  }
}

TEST_CASE("property: PU-equality and projective N ignore unit scalars", "[property]") {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const Isometry f = random_isometry(n, 1.5, rng);
    const Isometry g = Isometry::trusted(f.matrix() * unit(angle(rng)));
    CHECK(pu_equal(f, g));
    CHECK(std::abs(norm_n_projective(f) - norm_n_projective(g)) <= 1e-9);
    CHECK((phase_normalized(g)(0, 0).imag() == 0.0 && phase_normalized(g)(0, 0).real() >= 1.0));
  }
}

TEST_CASE("property: word evaluation is a homomorphism", "[property]") {
  std::mt19937_64 rng(111);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 3;
    const GroupInput g = group(n, {{"a", random_isometry(n, 1.0, rng)},
                                   {"b", random_isometry(n, 1.0, rng)},
                                   {"c", random_isometry(n, 1.0, rng)}});
    const Word u = random_word(3, int(rng() % 6), rng), v = random_word(3, int(rng() % 6), rng);
    const CMatrix uv = evaluate(g, u).matrix() * evaluate(g, v).matrix();
    const CMatrix direct = evaluate(g, u * v).matrix();
    CHECK((uv - direct).norm() <= 1e-9 * std::max(1.0, uv.norm()));
    const CMatrix inv = evaluate(g, u.inverse()).matrix() * evaluate(g, u).matrix();
    CHECK((inv - CMatrix::Identity(n + 1, n + 1)).norm() <= 1e-9 * std::max(1.0, evaluate(g, u).matrix().squaredNorm()));
  }
}

TEST_CASE("property: dedup is sound and complete on random groups", "[property]") {
  std::mt19937_64 rng(112);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    const GroupInput g = t % 3 == 0 ? group(n, {{"a", rot(n, std::vector<Complexd>(n, unit(2 * kPi / 5)))},
                                                 {"b", random_isometry(n, 0.8, rng)}})
                                    : group(n, {{"a", random_isometry(n, 0.8, rng)}, {"b", random_isometry(n, 0.8, rng)}});
    ExplorerOptions opts;
    opts.threads = 2;
    const Enumeration e = explore(g, 4, opts);
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK_FALSE(pu_equal(e.element(i), identity(n)));
      for (std::size_t j = i + 1; j < e.size(); ++j) CHECK_FALSE(pu_equal(e.element(i), e.element(j)));
      CHECK(pu_equal(evaluate(g, e.word(i)), e.element(i)));
    }
    for (int s = 0; s < 200; ++s) {
      const Word w = random_word(2, 1 + int(rng() % 4), rng).reduce();
      const Isometry x = evaluate(g, w);
      if (pu_equal(x, identity(n))) continue;
      bool found = false;
      for (std::size_t i = 0; i < e.size() && !found; ++i) found = pu_equal(x, e.element(i));
      CHECK(found);
    }
  }
}

TEST_CASE("property: commuting pairs with small N(f) violate the bound", "[property]") {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 3;
    const Isometry h = random_isometry(n, 0.3, rng);
    const Isometry f = conjugate(h, boost(n, 0.01 + 0.1 * u(rng)));
    if (norm_n(f) >= 0.2) continue;
    const Isometry g = conjugate(h, boost(n, -3.0 + 6.0 * u(rng)));
    const JorgensenOutcome o = jorgensen_statistic(f, g);
    CHECK(o.verdict == JorgensenVerdict::Violation);
    CHECK(o.commutator_norms.at(0) <= 1e-10 * std::max(1.0, norm_n(g)));
  }
}

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace chyp;
using namespace chyp::test;
using Catch::Matchers::WithinAbs;

namespace {

/// Commutator norm computed with plain matrix inversion.
double commutator_norm_oracle(const CMatrix& f, const CMatrix& g) {
  const CMatrix c = f * g * f.inverse() * g.inverse();
  Eigen::JacobiSVD<CMatrix> svd(c - CMatrix::Identity(c.rows(), c.cols()));
  return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("threshold is 2 - sqrt 3", "[jorgensen]") {
  CHECK(std::abs(jorgensen_threshold() - (2.0 - std::sqrt(3.0))) <= 1e-15);
  CHECK_THAT(jorgensen_threshold(), WithinAbs(0.2679491924, 1e-10));
}

TEST_CASE("verdict flips at the threshold minus tolerance", "[jorgensen]") {
  const double tol = 1e-9, t = jorgensen_threshold();
  CHECK(jorgensen_verdict(t - 2 * tol, tol) == JorgensenVerdict::Violation);
  CHECK(jorgensen_verdict(t - tol, tol) == JorgensenVerdict::BoundSatisfied);
  CHECK(jorgensen_verdict(t, tol) == JorgensenVerdict::BoundSatisfied);
  CHECK(jorgensen_verdict(0.0, tol) == JorgensenVerdict::Violation);
}

TEST_CASE("trivial partner: statistic is N(f)", "[jorgensen]") {
  const JorgensenOutcome o = jorgensen_statistic(boost(1, 1.0), identity(1));
  CHECK_THAT(o.statistic, WithinAbs(kE - 1.0, 1e-12));
  CHECK(o.verdict == JorgensenVerdict::BoundSatisfied);
  CHECK(o.branch == JorgensenBranch::NonElliptic);
  CHECK(o.commutator_norms.size() == 1);
  CHECK_THAT(o.commutator_norms[0], WithinAbs(0.0, 1e-14));
}

TEST_CASE("commuting loxodromics violate the bound", "[jorgensen]") {
  const JorgensenOutcome o = jorgensen_statistic(boost(1, 0.1), boost(1, 0.2));
  CHECK_THAT(o.statistic, WithinAbs(std::exp(0.1) - 1.0, 1e-14));
  CHECK_THAT(o.statistic, WithinAbs(0.10517, 1e-5));
  CHECK(o.verdict == JorgensenVerdict::Violation);
  const Certificate c = jorgensen_test(boost(1, 0.1), boost(1, 0.2));
  CHECK(c.kind == CertificateKind::JorgensenViolation);
  REQUIRE(c.witnesses.size() == 2);
  CHECK(c.witnesses[0].role == "f");
  CHECK(c.witnesses[0].values.front() == o.statistic);
}

TEST_CASE("axis-rotating partner is inconclusive", "[jorgensen]") {
  const Isometry g = conjugate(rot(1, {Complexd(0, 1)}), boost(1, 1.0));
  const Certificate c = jorgensen_test(boost(1, 1.0), g);
  CHECK(c.kind == CertificateKind::Inconclusive);
  const JorgensenOutcome o = jorgensen_statistic(boost(1, 1.0), g);
  CHECK_THAT(o.commutator_norms[0], WithinAbs(commutator_norm_oracle(boost(1, 1.0).matrix(), g.matrix()), 1e-9));
}

TEST_CASE("elliptic branch evaluates powers i = 1..n+1", "[jorgensen]") {
  const Isometry f = rot(1, {unit(2 * kPi / 3)});
  const Isometry g = boost(1, 1.0);
  const JorgensenOutcome o = jorgensen_statistic(f, g);
  CHECK(o.branch == JorgensenBranch::Elliptic);
  REQUIRE(o.commutator_norms.size() == 2);
  CHECK_THAT(o.commutator_norms[0], WithinAbs(commutator_norm_oracle(f.matrix(), g.matrix()), 1e-10));
  CHECK_THAT(o.commutator_norms[1],
             WithinAbs(commutator_norm_oracle(f.matrix(), g.matrix() * g.matrix()), 1e-10));
  double expected = norm_n(f);
  for (double c : o.commutator_norms) expected = std::max(expected, c);
  CHECK(o.statistic == expected);

  const Isometry f2 = rot(2, {unit(2 * kPi / 5), unit(-2 * kPi / 5)});
  CHECK(jorgensen_statistic(f2, boost(2, 1.0)).commutator_norms.size() == 3);
}

TEST_CASE("power side f puts the powers on the first argument", "[jorgensen]") {
  const Isometry f = rot(1, {unit(2 * kPi / 3)});
  const Isometry g = boost(1, 0.4);
  const JorgensenOutcome o = jorgensen_statistic(f, g, {}, {NormKind::Operator, PowerSide::First});
  REQUIRE(o.commutator_norms.size() == 2);
  CHECK_THAT(o.commutator_norms[1],
             WithinAbs(commutator_norm_oracle(f.matrix() * f.matrix(), g.matrix()), 1e-10));
}

TEST_CASE("Frobenius norm option is recorded", "[jorgensen]") {
  const JorgensenOutcome o = jorgensen_statistic(boost(1, 0.1), boost(1, 0.2), {}, {NormKind::Frobenius});
  CHECK(o.norm_used == NormKind::Frobenius);
  CHECK_THAT(o.statistic, WithinAbs(norm_n(boost(1, 0.1), NormKind::Frobenius), 1e-15));
}

TEST_CASE("identity f is not applicable", "[jorgensen]") {
  CHECK_THROWS_AS(jorgensen_statistic(identity(1), boost(1, 1.0)), NotApplicable);
  CHECK_THROWS_AS(jorgensen_test(Isometry::trusted(-CMatrix::Identity(2, 2)), boost(1, 1.0)), NotApplicable);
  CHECK_THROWS_AS(jorgensen_statistic(boost(1, 1.0), boost(2, 1.0)), DimensionError);
}

TEST_CASE("parabolic f uses the non-elliptic branch", "[jorgensen]") {
  const JorgensenOutcome o = jorgensen_statistic(p0(), boost(1, 1.0));
  CHECK(o.branch == JorgensenBranch::NonElliptic);
  CHECK_FALSE(o.branch_assumed);
  CHECK(o.commutator_norms.size() == 1);
}

#pragma once

#include <cmath>
#include <sstream>

#include "chyp/certificate.hpp"
#include "chyp/classify.hpp"

namespace chyp {

/// 2 - sqrt(3), the bound max{N(f), N([f,g])} >= 2 - sqrt(3) that every
/// discrete non-elementary two-generator group satisfies.
inline double jorgensen_threshold() { return 2.0 - std::sqrt(3.0); }

enum class JorgensenVerdict { BoundSatisfied, Violation };
enum class JorgensenBranch { NonElliptic, Elliptic };

inline std::string to_string(JorgensenVerdict v) {
  return v == JorgensenVerdict::Violation ? "Violation" : "BoundSatisfied";
}
inline std::string to_string(JorgensenBranch b) {
  return b == JorgensenBranch::Elliptic ? "Elliptic" : "NonElliptic";
}

struct JorgensenOptions {
  NormKind norm = NormKind::Operator;
  PowerSide power_side = PowerSide::Second;
};

struct JorgensenOutcome {
  double statistic = 0.0;
  double threshold = jorgensen_threshold();
  JorgensenVerdict verdict = JorgensenVerdict::BoundSatisfied;
  JorgensenBranch branch = JorgensenBranch::NonElliptic;
  NormKind norm_used = NormKind::Operator;
  /// Set when the classification of f was ambiguous; the elliptic branch is
  /// then used, whose statistic dominates the non-elliptic one.
  bool branch_assumed = false;
  double norm_f = 0.0;
  std::vector<double> commutator_norms;  // N([f,g]) or N([f,g^i]), i = 1..n+1
};

inline JorgensenVerdict jorgensen_verdict(double statistic, double tol_identity) {
  return statistic < jorgensen_threshold() - tol_identity ? JorgensenVerdict::Violation
                                                          : JorgensenVerdict::BoundSatisfied;
}

/// Branch selection by the class of f; throws NotApplicable for f = I.
inline JorgensenBranch jorgensen_branch(const Isometry& f, const ToleranceConfig& cfg, bool& assumed) {
  assumed = false;
  try {
    const IsometryTag tag = classify_isometry(f, cfg).tag;
    if (tag == IsometryTag::Identity) throw NotApplicable("Jorgensen statistic needs a non-identity f");
    return tag == IsometryTag::Elliptic ? JorgensenBranch::Elliptic : JorgensenBranch::NonElliptic;
  } catch (const NumericallyAmbiguous&) {
    assumed = true;
    return JorgensenBranch::Elliptic;
  }
}

/// Statistic for a pair whose branch is already known.
inline JorgensenOutcome jorgensen_statistic(const Isometry& f, const Isometry& g, JorgensenBranch branch,
                                            const ToleranceConfig& cfg, const JorgensenOptions& opts = {}) {
  require_same_dim(f, g);
  JorgensenOutcome out;
  out.branch = branch;
  out.norm_used = opts.norm;
  out.norm_f = norm_n(f, opts.norm);
  out.statistic = out.norm_f;
  const int powers = branch == JorgensenBranch::Elliptic ? f.dim_n() + 1 : 1;
  CMatrix fp = f.matrix(), gp = g.matrix();
  for (int i = 1; i <= powers; ++i) {
    const Isometry lhs = opts.power_side == PowerSide::First ? Isometry::trusted(fp) : f;
    const Isometry rhs = opts.power_side == PowerSide::Second ? Isometry::trusted(gp) : g;
    const double c = norm_n(commutator(lhs, rhs), opts.norm);
    out.commutator_norms.push_back(c);
    out.statistic = std::max(out.statistic, c);
    fp = fp * f.matrix();
    gp = gp * g.matrix();
  }
  out.verdict = jorgensen_verdict(out.statistic, cfg.tol_identity);
  return out;
}

/// max{N(f), N([f,g])} for parabolic or loxodromic f;
/// max{N(f), N([f,g^i]) : i = 1..n+1} for elliptic f.
inline JorgensenOutcome jorgensen_statistic(const Isometry& f, const Isometry& g, const ToleranceConfig& cfg = {},
                                            const JorgensenOptions& opts = {}) {
  require_same_dim(f, g);
  bool assumed = false;
  const JorgensenBranch branch = jorgensen_branch(f, cfg, assumed);
  JorgensenOutcome out = jorgensen_statistic(f, g, branch, cfg, opts);
  out.branch_assumed = assumed;
  return out;
}

inline Witness jorgensen_f_witness(const JorgensenOutcome& o, Word wf) {
  std::vector<double> values{o.statistic, o.norm_f};
  values.insert(values.end(), o.commutator_norms.begin(), o.commutator_norms.end());
  return {"f", std::move(wf), std::move(values)};
}

/// A Violation certifies that <f, g> is not simultaneously discrete and
/// non-elementary. Nothing else is claimed; otherwise Inconclusive.
inline Certificate jorgensen_test(const Isometry& f, const Isometry& g, const ToleranceConfig& cfg = {},
                                  const JorgensenOptions& opts = {}, Word wf = {}, Word wg = {}) {
  const JorgensenOutcome o = jorgensen_statistic(f, g, cfg, opts);
  Certificate c;
  std::ostringstream os;
  os.precision(10);
  os << "statistic " << o.statistic << " (" << to_string(o.branch) << " branch, " << to_string(o.norm_used)
     << " norm) vs threshold " << o.threshold;
  if (o.verdict == JorgensenVerdict::Violation) {
    c.kind = CertificateKind::JorgensenViolation;
    os << ": the pair does not generate a group that is both discrete and non-elementary";
  } else {
    os << ": bound satisfied, no conclusion";
  }
  c.narrative = os.str();
  if (o.branch_assumed) c.assumptions.push_back("classification of f ambiguous; elliptic branch used");
  c.witnesses.push_back(jorgensen_f_witness(o, std::move(wf)));
  c.witnesses.push_back({"g", std::move(wg), {}});
  return c;
}

}  // namespace chyp

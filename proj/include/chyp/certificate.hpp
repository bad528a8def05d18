#pragma once

#include <string>
#include <vector>

#include "chyp/word.hpp"

namespace chyp {

enum class CertificateKind {
  JorgensenViolation,
  NearIdentitySequence,
  NonElementaryWitness,
  ConditionAEvidence,
  Inconclusive,
};

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::JorgensenViolation: return "JorgensenViolation";
    case CertificateKind::NearIdentitySequence: return "NearIdentitySequence";
    case CertificateKind::NonElementaryWitness: return "NonElementaryWitness";
    case CertificateKind::ConditionAEvidence: return "ConditionAEvidence";
    case CertificateKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Ranking used when several analyses produce evidence; higher wins.
inline int strength(CertificateKind k) {
  switch (k) {
    case CertificateKind::NearIdentitySequence: return 4;
    case CertificateKind::JorgensenViolation: return 3;
    case CertificateKind::ConditionAEvidence: return 2;
    case CertificateKind::NonElementaryWitness: return 1;
    case CertificateKind::Inconclusive: return 0;
  }
  return 0;
}

/// One group element behind a certificate, with the numbers it is claimed
/// to reproduce. The meaning of `values` depends on the certificate kind:
///   NearIdentitySequence, ConditionAEvidence: {N}
///   JorgensenViolation: role "f" {statistic, N(f), N([f,g^i])...}; role "g" {}
///   NonElementaryWitness: the boundary fixed points as (re, im) pairs
struct Witness {
  std::string role;
  Word word;
  std::vector<double> values;
};

struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  std::vector<Witness> witnesses;
  std::string narrative;
  std::vector<std::string> assumptions;

  bool conclusive() const { return kind != CertificateKind::Inconclusive; }
};

}  // namespace chyp

#pragma once

#include <charconv>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chyp {

using Complexd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class NormKind { Operator, Frobenius };

/// Which argument of a Jorgensen pair is raised to the powers 1..n+1 in the
/// elliptic branch: the second one (as the inequality is usually printed) or
/// the first.
enum class PowerSide { Second, First };

enum class IsometryTag { Identity, Elliptic, Parabolic, Loxodromic };

inline std::string to_string(NormKind k) {
  return k == NormKind::Operator ? "operator" : "frobenius";
}

inline std::string to_string(PowerSide s) { return s == PowerSide::Second ? "g" : "f"; }

inline std::string to_string(IsometryTag t) {
  switch (t) {
    case IsometryTag::Identity: return "Identity";
    case IsometryTag::Elliptic: return "Elliptic";
    case IsometryTag::Parabolic: return "Parabolic";
    case IsometryTag::Loxodromic: return "Loxodromic";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Zero vectors, NaN or Inf entries, empty matrices.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

class InfinityNotSupported : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class ModeUnavailable : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal text that parses back to x.
inline std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

class NotUnitaryError : public Error {
 public:
  NotUnitaryError(double residual, double allowed)
      : Error("matrix does not preserve the form: residual " + shortest(residual) + " exceeds " +
              shortest(allowed)),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NumericallyAmbiguous : public Error {
 public:
  NumericallyAmbiguous(std::vector<IsometryTag> candidates, const std::string& why)
      : Error("numerically ambiguous classification: " + why), candidates_(std::move(candidates)) {}
  const std::vector<IsometryTag>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<IsometryTag> candidates_;
};

class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(std::string stage)
      : Error("search bound exhausted at stage '" + stage + "'"), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// All tolerances are relative and dimensionless.
struct ToleranceConfig {
  double tol_unitary = 1e-9;
  double tol_null = 1e-9;
  double tol_eig = 1e-5;
  double tol_identity = 1e-9;

  void validate() const {
    auto ok = [](double v) { return v > 0.0 && v < 1.0; };
    if (!ok(tol_unitary) || !ok(tol_null) || !ok(tol_eig) || !ok(tol_identity))
      throw ConfigError("tolerances must lie strictly between 0 and 1");
  }
};

}  // namespace chyp

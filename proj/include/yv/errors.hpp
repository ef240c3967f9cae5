#pragma once

#include <stdexcept>
#include <string>

namespace yv {

// Hard integrity failures: something that the underlying mathematics says
// cannot happen did happen. These abort a computation; verification results
// that are merely "fail" are reported through VerificationReport instead.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonZeroRemainder : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class NonIntegerQuotient : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class StructureViolation : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class UnexpectedCommonFactor : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class DegenerateDenominator : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class CertificationFailure : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class FitFailure : public IntegrityError {
 public:
  using IntegrityError::IntegrityError;
};

class ZeroConstantTerm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ResonanceUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, int iterations, std::string worst_residual)
      : std::runtime_error(what),
        iterations_(iterations),
        worst_residual_(std::move(worst_residual)) {}

  int iterations() const noexcept { return iterations_; }
  const std::string& worst_residual() const noexcept { return worst_residual_; }

 private:
  int iterations_;
  std::string worst_residual_;
};

}  // namespace yv

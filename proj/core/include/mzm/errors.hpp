#pragma once

#include <stdexcept>
#include <string>

namespace mzm {

// Two failure families, kept apart because callers react differently:
//  - DomainError: the requested physics does not exist (no decaying mode, no
//    zero mode, parameters outside the evanescent window). Not retryable.
//  - NumericalGuardError: the computation is defined but the discretization or
//    conditioning is too poor to trust (coarse path steps, vanishing overlaps).
//    Retryable with finer resolution.
// The CLI maps them to distinct exit codes (2 and 3).

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error {
public:
  using Error::Error;
};

class NumericalGuardError : public Error {
public:
  using Error::Error;
};

// ---- domain family ----

// Bound-state search requires |mu_FI| < m |sin theta| so that both spin
// components decay; outside that window there is no evanescent FI solution.
class EvanescentConditionViolated : public DomainError {
public:
  using DomainError::DomainError;
};

// m sin theta = 0: the in-plane magnetization vanishes and alpha becomes
// undefined as a loop parameter.
class DegenerateInPlane : public DomainError {
public:
  using DomainError::DomainError;
};

class NoDecayingMode : public DomainError {
public:
  using DomainError::DomainError;
};

class NoZeroMode : public DomainError {
public:
  using DomainError::DomainError;
};

class DegenerateZeroMode : public DomainError {
public:
  using DomainError::DomainError;
};

class NoLocalizedZeroMode : public DomainError {
public:
  using DomainError::DomainError;
};

class GridMismatch : public DomainError {
public:
  using DomainError::DomainError;
};

// ---- numerical-guard family ----

// A single discrete step swallowed a phase of pi/2 or more; the accumulated
// arg sum is no longer a trustworthy discretization of the line integral.
class StepTooCoarse : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class ZeroOverlap : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class BasisDiscontinuity : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class OverlapVanishes : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

class NonHermitianGenerator : public NumericalGuardError {
public:
  using NumericalGuardError::NumericalGuardError;
};

} // namespace mzm

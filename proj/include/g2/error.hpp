#pragma once

#include <stdexcept>
#include <string>

namespace g2 {

/// Base class for every failure raised by the library. `kind()` is a stable
/// identifier used by the CLI when reporting errors as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define G2_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

// profiles
G2_DEFINE_ERROR(DomainError)
G2_DEFINE_ERROR(SingularEval)
G2_DEFINE_ERROR(QuadratureFailure)
G2_DEFINE_ERROR(ParseError)

// forms
G2_DEFINE_ERROR(DegreeOverflow)
G2_DEFINE_ERROR(DegreeMismatch)
G2_DEFINE_ERROR(ConstraintViolated)

// coflow
G2_DEFINE_ERROR(StructureMismatch)
G2_DEFINE_ERROR(SingularityDetected)

// soliton
G2_DEFINE_ERROR(InvalidParams)
G2_DEFINE_ERROR(SingularLocus)
G2_DEFINE_ERROR(StepFailure)
G2_DEFINE_ERROR(SignAmbiguity)
G2_DEFINE_ERROR(DivergentIntegral)
G2_DEFINE_ERROR(NoBracket)

// cli
G2_DEFINE_ERROR(ConfigError)

#undef G2_DEFINE_ERROR

}  // namespace g2

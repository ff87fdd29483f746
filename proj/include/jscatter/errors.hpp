#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jscatter {

// Base of every numerical or validation failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define JSCATTER_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

// Input-domain violations.
JSCATTER_DEFINE_ERROR(DomainError)
JSCATTER_DEFINE_ERROR(PoleError)
JSCATTER_DEFINE_ERROR(SupercriticalityError)
JSCATTER_DEFINE_ERROR(SubcriticalityError)
JSCATTER_DEFINE_ERROR(GridMismatchError)
JSCATTER_DEFINE_ERROR(ConfigError)

// Numerical breakdowns.
JSCATTER_DEFINE_ERROR(OverflowError)
JSCATTER_DEFINE_ERROR(ConvergenceError)
JSCATTER_DEFINE_ERROR(CancellationError)
JSCATTER_DEFINE_ERROR(SingularMatchError)
JSCATTER_DEFINE_ERROR(DegenerateSlopeError)
JSCATTER_DEFINE_ERROR(QuadratureError)
JSCATTER_DEFINE_ERROR(NearSingularError)
JSCATTER_DEFINE_ERROR(ZeroDenominatorError)
JSCATTER_DEFINE_ERROR(StiffnessError)
JSCATTER_DEFINE_ERROR(IllConditionedMatchError)
JSCATTER_DEFINE_ERROR(IoError)

#undef JSCATTER_DEFINE_ERROR

// Non-fatal conditions collected along a computation and surfaced in the run
// manifest.
using Warnings = std::vector<std::string>;

}  // namespace jscatter

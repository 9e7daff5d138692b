#pragma once

#include <stdexcept>
#include <string>

namespace isoperi {

// Base of every failure raised by the toolkit. Subclasses name the failure
// category so callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ISOPERI_ERROR(Name)                  \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

ISOPERI_ERROR(StructuralError)   // unbounded, empty, lower-dimensional input
ISOPERI_ERROR(SingularityError)  // singular matrix where an inverse is needed
ISOPERI_ERROR(NotPsdError)
ISOPERI_ERROR(ConvergenceError)
ISOPERI_ERROR(SizeError)         // dimension or combinatorial caps exceeded
ISOPERI_ERROR(TangencyError)     // facets do not all touch the inball
ISOPERI_ERROR(GeometryError)     // padding cut or placement invalid
ISOPERI_ERROR(SpecError)         // invalid construction parameters
ISOPERI_ERROR(DegeneracyError)   // rank-deficient data
ISOPERI_ERROR(SamplingError)
ISOPERI_ERROR(UsageError)
ISOPERI_ERROR(IoError)

#undef ISOPERI_ERROR

}  // namespace isoperi

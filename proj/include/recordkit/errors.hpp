#pragma once

#include <stdexcept>
#include <string>

namespace recordkit {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define RECORDKIT_DEFINE_ERROR(NAME)          \
  struct NAME : Error {                       \
    using Error::Error;                       \
  }

RECORDKIT_DEFINE_ERROR(DomainError);         // argument outside a function's domain
RECORDKIT_DEFINE_ERROR(InvalidElement);      // NaN coordinate or dimension mismatch at ingestion
RECORDKIT_DEFINE_ERROR(EmptyInput);
RECORDKIT_DEFINE_ERROR(TooFewRecords);
RECORDKIT_DEFINE_ERROR(InvalidGap);          // inter-record gap < 1
RECORDKIT_DEFINE_ERROR(InvalidTimes);        // record-time tuple not strictly increasing / starts below 2
RECORDKIT_DEFINE_ERROR(InvalidExponent);     // nonpositive exponent in a simplex integral
RECORDKIT_DEFINE_ERROR(UnsupportedVariant);  // operation undefined for this distribution variant
RECORDKIT_DEFINE_ERROR(ShapeMismatch);
RECORDKIT_DEFINE_ERROR(OffSupport);
RECORDKIT_DEFINE_ERROR(StateBoundExceeded);  // enumeration state space over budget
RECORDKIT_DEFINE_ERROR(InsufficientSamples);
RECORDKIT_DEFINE_ERROR(TooFewConditioningHits);
RECORDKIT_DEFINE_ERROR(ParseError);

#undef RECORDKIT_DEFINE_ERROR

}  // namespace recordkit

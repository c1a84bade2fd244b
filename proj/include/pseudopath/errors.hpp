#pragma once

#include <stdexcept>
#include <string>

namespace pseudopath {

// Base class for all domain errors raised by the library. Messages name the
// violated precondition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InadmissibleSpec : Error { using Error::Error; };
struct TimeTooSmall : Error { using Error::Error; };
struct GridTooNarrow : Error { using Error::Error; };
struct NotIntegrable : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct SpecMismatch : Error { using Error::Error; };
struct NegativeVariation : Error { using Error::Error; };
struct NotARefinement : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InconsistentRepresentations : Error { using Error::Error; };
struct SliceTooSmall : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SingularOperator : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct LadderDivergence : Error { using Error::Error; };
struct NonNested : Error { using Error::Error; };

} // namespace pseudopath

#pragma once

#include <stdexcept>
#include <string>

namespace qslb {

/// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// quantum-core
struct BadDimension : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NonrealExpectation : Error { using Error::Error; };
struct EigensolverFailure : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };

// bound-laws
struct NonpositiveDeltaE : Error { using Error::Error; };
struct BadN : Error { using Error::Error; };
struct OutOfValidityWindow : Error { using Error::Error; };
struct ZeroFirstMoment : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct ZeroDeltaE : Error { using Error::Error; };
struct GridNotAscending : Error { using Error::Error; };

// model-zoo
struct NoCrossing : Error { using Error::Error; };

// saturation-search
struct NotEigenstateStart : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct DegenerateDraw : Error { using Error::Error; };

}  // namespace qslb

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace fframe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyInputError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct NotFiniteError : Error { using Error::Error; };
struct NotSquareError : Error { using Error::Error; };
struct NotSymmetricError : Error { using Error::Error; };
struct IterationLimitError : Error { using Error::Error; };
struct OverlappingSubspacesError : Error { using Error::Error; };
struct NotRieszBasisError : Error { using Error::Error; };
struct NotAFrameError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct NonpositiveGammaError : Error { using Error::Error; };
struct NonpositiveWeightError : Error { using Error::Error; };
struct MalformedDecompositionError : Error { using Error::Error; };
struct BadDecompositionError : Error { using Error::Error; };
struct WrongAmbientDimensionError : Error { using Error::Error; };
struct RankDeficientBasisError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UnknownTheoremIdError : Error { using Error::Error; };
struct UnknownExampleError : Error { using Error::Error; };
struct ParameterOutOfRangeError : Error { using Error::Error; };
struct InvalidSpecError : Error { using Error::Error; };

} // namespace fframe

#pragma once

#include <stdexcept>
#include <string>

namespace kcoh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// document / input problems
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IncompleteSquares : ValidationError { using ValidationError::ValidationError; };
struct DuplicateSquare : ValidationError { using ValidationError::ValidationError; };
struct CubeInconsistency : ValidationError { using ValidationError::ValidationError; };

// operation preconditions
struct NotComposable : Error { using Error::Error; };
struct DegreeOutOfRange : Error { using Error::Error; };
struct GraphMismatch : Error { using Error::Error; };
struct BaseMismatch : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };
struct HasSources : Error { using Error::Error; };
struct InfiniteResult : Error { using Error::Error; };
struct InvalidFunctor : Error { using Error::Error; };
struct UnsupportedCoefficients : Error { using Error::Error; };

}  // namespace kcoh

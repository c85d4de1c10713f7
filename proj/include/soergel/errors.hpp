#pragma once

#include <stdexcept>
#include <string>

namespace soergel {

// All failures are reported through typed exceptions.  The "fatal diagnostic"
// family (NoSolution, NotInSpan, InconsistentSystem, ...) signals a violated
// mathematical identity rather than bad user input; the CLI maps them to exit
// code 1, usage errors to exit code 2.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SOERGEL_ERROR(Name)                   \
    struct Name : Error {                     \
        using Error::Error;                   \
    }

SOERGEL_ERROR(UnsupportedOrder);
SOERGEL_ERROR(FieldMismatch);
SOERGEL_ERROR(FieldTowerUnsupported);
SOERGEL_ERROR(BallExceeded);
SOERGEL_ERROR(CapExceeded);
SOERGEL_ERROR(NotSameElement);
SOERGEL_ERROR(MalformedH);
SOERGEL_ERROR(DivisionFailure);
SOERGEL_ERROR(ShapeMismatch);
SOERGEL_ERROR(NoSolution);
SOERGEL_ERROR(NonUniqueSolution);
SOERGEL_ERROR(NotInSpan);
SOERGEL_ERROR(InconsistentSystem);
SOERGEL_ERROR(CrossCheckFailed);
SOERGEL_ERROR(NotComparable);
SOERGEL_ERROR(UniquenessViolation);

#undef SOERGEL_ERROR

}  // namespace soergel

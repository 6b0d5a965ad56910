#pragma once

#include <stdexcept>
#include <string>

namespace anrot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// trajectory does not reach the inner scatterer
struct UnreachableError : Error { using Error::Error; };
// energy sphere and momentum plane do not intersect
struct EmptyCircleError : Error { using Error::Error; };
// velocity violates the circle equations beyond tolerance
struct OffCircleError : Error { using Error::Error; };
struct InvalidStateError : Error { using Error::Error; };
// operation requires the alternating regime (empty miss set)
struct NonAlternatingError : Error { using Error::Error; };
// sign convention on the tangential component violated
struct ConventionViolatedError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct PreconditionUnmetError : Error { using Error::Error; };
// zero velocity, no next collision
struct StuckError : Error { using Error::Error; };
// containment invariant of the event-driven run violated
struct NumericalDriftError : Error { using Error::Error; };

}  // namespace anrot

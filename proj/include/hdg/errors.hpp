#pragma once

#include <stdexcept>
#include <string>

namespace hdg {

// Base class for all structured diagram errors. The CLI maps these to exit
// code 2 (input errors); property violations found by `verify` use exit 1.
struct DiagramError : std::runtime_error {
    explicit DiagramError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : DiagramError {
    ParseError(int line, const std::string& what)
        : DiagramError("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct DuplicateCrossing : DiagramError {
    using DiagramError::DiagramError;
};
struct MissingCrossing : DiagramError {
    using DiagramError::DiagramError;
};
struct InvalidMatching : DiagramError {
    using DiagramError::DiagramError;
};
struct EulerCheckFailed : DiagramError {
    using DiagramError::DiagramError;
};
struct SingularIntersection : DiagramError {
    using DiagramError::DiagramError;
};
struct CrossingNotOnCurve : DiagramError {
    using DiagramError::DiagramError;
};
struct NoPerfectMatching : DiagramError {
    using DiagramError::DiagramError;
};
struct NotACycle : DiagramError {
    using DiagramError::DiagramError;
};
struct InvalidSite : DiagramError {
    using DiagramError::DiagramError;
};
struct InconsistentPath : DiagramError {
    using DiagramError::DiagramError;
};
struct SymplecticViolation : DiagramError {
    using DiagramError::DiagramError;
};

}  // namespace hdg

#pragma once

#include <stdexcept>
#include <string>

namespace boxl1 {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Result would exceed double range; caller must switch to a log-domain variant.
struct OverflowDomain : Error {
    explicit OverflowDomain(const std::string& what) : Error(what) {}
};

// An iterative routine ran out of budget before reaching its tolerance.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

// Root finding called without a sign change between the endpoints.
struct NoBracket : Error {
    explicit NoBracket(const std::string& what) : Error(what) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& what) : Error(what) {}
};

// Face index outside the combinatorial range of the requested family.
struct InvalidFace : Error {
    explicit InvalidFace(const std::string& what) : Error(what) {}
};

struct InvalidDims : Error {
    explicit InvalidDims(const std::string& what) : Error(what) {}
};

// Optimization interval is empty or degenerate.
struct EmptyRange : Error {
    explicit EmptyRange(const std::string& what) : Error(what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(what) {}
};

// Equality system has no feasible point within tolerance.
struct InfeasibleProblem : Error {
    explicit InfeasibleProblem(const std::string& what) : Error(what) {}
};

struct IterationLimitReached : Error {
    explicit IterationLimitReached(const std::string& what) : Error(what) {}
};

} // namespace boxl1

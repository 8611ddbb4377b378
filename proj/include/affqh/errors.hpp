#pragma once

#include <stdexcept>
#include <string>

namespace affqh {

// Base class for every error the engine raises deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: unknown type letter, rank out of range, malformed text.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

// Dimension mismatch between vectors, forms or group elements.
struct RankMismatch : InvalidInput {
    explicit RankMismatch(const std::string& what) : InvalidInput(what) {}
};

struct ParseError : InvalidInput {
    explicit ParseError(const std::string& what) : InvalidInput(what) {}
};

// A word fed to the localization machinery is not reduced.
struct NonReducedWord : Error {
    explicit NonReducedWord(const std::string& what) : Error(what) {}
};

// An element required to be a minimal coset representative is not one.
struct NotMinimalCosetRep : Error {
    explicit NotMinimalCosetRep(const std::string& what) : Error(what) {}
};

// A quantity that must be polynomial kept a denominator (or a division that
// must be exact was not).  Signals a convention bug, never user error.
struct NotPolynomial : Error {
    explicit NotPolynomial(const std::string& what) : Error(what) {}
};

// Fraction division by something that is not an admissible pivot.
struct DivisionByNonLinearProduct : Error {
    explicit DivisionByNonLinearProduct(const std::string& what) : Error(what) {}
};

// Triangular elimination failed to clear a vector.  The two payloads are
// distinguished so callers can tell a search-bound problem from a bug.
struct ResidualNonzero : Error {
    enum class Reason { InsufficientBound, ConventionBug };
    Reason reason;
    ResidualNonzero(Reason r, const std::string& what)
        : Error(what), reason(r) {}
};

// The quantum product recursion could not isolate a layer of unknowns.
struct RecursionStuck : Error {
    explicit RecursionStuck(const std::string& what) : Error(what) {}
};

// An enumeration would exceed the configured safety caps.
struct EnumerationCapExceeded : Error {
    explicit EnumerationCapExceeded(const std::string& what) : Error(what) {}
};

} // namespace affqh

#pragma once

#include <stdexcept>
#include <string>

namespace twobridge {

// Base for all domain-level failures so callers (and the CLI) can map them
// to exit codes without enumerating every concrete type.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (fractions, expansions, slopes).
struct ParseError : DomainError {
    explicit ParseError(const std::string& what = "cannot parse input") : DomainError(what) {}
};

// An intermediate continuant vanished while evaluating an expansion.
struct DegenerateExpansion : DomainError {
    explicit DegenerateExpansion(const std::string& what = "degenerate expansion: intermediate continuant is zero")
        : DomainError(what) {}
};

// Fraction does not have the parity the operation requires.
struct BadParity : DomainError {
    explicit BadParity(const std::string& what = "fraction has wrong parity for this operation")
        : DomainError(what) {}
};

struct NotCoprime : DomainError {
    explicit NotCoprime(const std::string& what = "arguments are not coprime") : DomainError(what) {}
};

// Fraction with even denominator names a 2-bridge link, not a knot.
struct IsLink : DomainError {
    explicit IsLink(const std::string& what = "fraction denotes a two-bridge link, not a knot")
        : DomainError(what) {}
};

struct TrivialKnot : DomainError {
    explicit TrivialKnot(const std::string& what = "fraction denotes the trivial knot") : DomainError(what) {}
};

// Slope 1/0 is the trivial filling and carries no verdict.
struct TrivialSlope : DomainError {
    explicit TrivialSlope(const std::string& what = "infinite slope is the trivial surgery") : DomainError(what) {}
};

// p/q = (q-1)/q has the all-twos even expansion and no obstruction path.
struct AllTwosExpansion : DomainError {
    explicit AllTwosExpansion(const std::string& what = "all-twos expansion admits no obstruction path")
        : DomainError(what) {}
};

// Twisted Whitehead construction needs more than two half-twists.
struct TooFewTwists : DomainError {
    explicit TooFewTwists(const std::string& what = "twist parameter must exceed 2 in magnitude")
        : DomainError(what) {}
};

struct BadTwist : DomainError {
    explicit BadTwist(const std::string& what = "twist parameter must not be 0 or 1") : DomainError(what) {}
};

struct NotOnPath : DomainError {
    explicit NotOnPath(const std::string& what = "vertex is not an interior vertex of the path")
        : DomainError(what) {}
};

struct BoundExceeded : DomainError {
    explicit BoundExceeded(const std::string& what = "path enumeration exceeded its node bound")
        : DomainError(what) {}
};

// An internal cross-check failed; indicates a bug, not bad input.
struct InternalInconsistency : DomainError {
    explicit InternalInconsistency(const std::string& what = "internal consistency check failed")
        : DomainError(what) {}
};

struct ArithmeticOverflow : DomainError {
    explicit ArithmeticOverflow(const std::string& what = "integer overflow in exact arithmetic")
        : DomainError(what) {}
};

}  // namespace twobridge

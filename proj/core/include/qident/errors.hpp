#ifndef QIDENT_ERRORS_HPP
#define QIDENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qident {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// inverse() of a series that is zero to its truncation order.
struct ZeroLeadingTerm : Error {
    using Error::Error;
};

/// negate_q() on a series with fractional exponents.
struct FractionalGrid : Error {
    using Error::Error;
};

/// coefficient() queried at or past the truncation order.
struct BeyondOrder : Error {
    using Error::Error;
};

/// poch_infinite() whose first factor is (1 - 1).
struct DivergentBase : Error {
    using Error::Error;
};

/// Theta/quintuple argument outside the formal convergence region.
struct DomainViolation : Error {
    using Error::Error;
};

/// Unknown Bailey pair or catalog label.
struct UnknownLabel : Error {
    using Error::Error;
};

/// Bilateral sum does not terminate for the given parameters.
struct NonTerminating : Error {
    using Error::Error;
};

/// Bailey lemma applied to a pair with the wrong relativity parameter.
struct IncompatibleRelA : Error {
    using Error::Error;
};

/// Product-family index outside its admissible range.
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Specialization of the q-Gauss / q-Bailey sums outside the supported
/// conjugate-root set.
struct UnsupportedSpecialization : Error {
    using Error::Error;
};

/// A catalog side expanded to a series with a non-integer coefficient,
/// which signals a transcription bug in the record.
struct NonIntegralResult : Error {
    using Error::Error;
};

/// Expression text failed to parse; carries position information.
struct SyntaxError : Error {
    int line;
    int column;
    std::string expected;

    SyntaxError(const std::string& msg, int line_, int column_, std::string expected_)
        : Error(msg), line(line_), column(column_), expected(std::move(expected_)) {}
};

/// Malformed catalog file or record.
struct CatalogError : Error {
    using Error::Error;
};

} // namespace qident

#endif

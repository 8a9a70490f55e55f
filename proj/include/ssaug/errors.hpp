#ifndef SSAUG_ERRORS_HPP
#define SSAUG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ssaug {

// Base for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooShort : Error {
    using Error::Error;
};
struct ZeroVariance : Error {
    using Error::Error;
};
struct WindowTooLarge : Error {
    using Error::Error;
};
struct EigenFailure : Error {
    using Error::Error;
};
struct EmptyGroup : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct ZeroDenominator : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct EmptyDataset : Error {
    using Error::Error;
};
struct UnmappedLabel : Error {
    using Error::Error;
};
struct MissingFoldFactor : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace ssaug

#endif

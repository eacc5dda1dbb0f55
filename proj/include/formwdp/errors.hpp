#pragma once

#include <stdexcept>
#include <string>

namespace formwdp {

/// Base class for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A bid required by the requested position is absent.
struct MissingBid : Error {
    using Error::Error;
};

/// An argument lies outside the operation's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

/// The shared-position bids admit no break-even share.
struct NoBreakeven : Error {
    using Error::Error;
};

/// A per-unit average is undefined because one competitor serves zero units.
struct DegenerateShare : Error {
    using Error::Error;
};

/// Matrix too large for factorial enumeration.
struct TooLarge : Error {
    using Error::Error;
};

/// Menu could not be balanced into a square assignment problem.
struct UnbalancedMenu : Error {
    using Error::Error;
};

/// Scenario file is not well-formed JSON.
struct ParseError : Error {
    using Error::Error;
};

/// Scenario content violates a schema constraint; carries the field path.
struct ValidationError : Error {
    ValidationError(std::string field_path, const std::string& constraint)
        : Error(field_path + ": " + constraint), field(std::move(field_path)) {}

    std::string field;
};

/// Filesystem-level failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace formwdp

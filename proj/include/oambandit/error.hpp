#pragma once

#include <stdexcept>
#include <string>

namespace oambandit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or argument (wrong length, out-of-range value).
class InvalidConfiguration : public Error {
public:
    using Error::Error;
};

/// A request that is well formed but cannot be satisfied by any phase choice.
class Unachievable : public Error {
public:
    using Error::Error;
};

/// The operation is only defined for a different number of arms.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Every detection channel carries zero probability mass.
class DeadChannel : public Error {
public:
    using Error::Error;
};

/// A history was updated past its horizon.
class HorizonExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace oambandit

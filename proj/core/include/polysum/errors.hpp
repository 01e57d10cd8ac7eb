#pragma once

#include <stdexcept>
#include <string>

namespace polysum {

/// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad dimensions,
/// non-adjacent target, malformed input). Maps to CLI exit code 2.
struct ContractError : Error {
    using Error::Error;
};

/// An enumeration refused to run because the instance exceeds the
/// configured column cap. The message names the cap.
struct CapError : Error {
    CapError(std::size_t cap, std::size_t cols)
        : Error("enumeration cap exceeded: " + std::to_string(cols) +
                " columns > cap " + std::to_string(cap)),
          cap(cap), cols(cols) {}
    std::size_t cap;
    std::size_t cols;
};

/// An internal invariant failed; indicates a bug or an input outside
/// the assumptions the construction relies on.
struct IntegrityError : Error {
    using Error::Error;
};

/// Malformed file content; message carries the location when known.
struct ParseError : Error {
    using Error::Error;
};

} // namespace polysum

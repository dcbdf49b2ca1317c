#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pblocks {

enum class ErrorKind {
    MalformedInput,
    ParseError,
    NotConnected,
    NotNested,
    PreconditionViolated,
    NoSeparationExists,
    HingeVertex,
    NotAnAutomorphism,
    TooLarge,
    BadExponent,
    Overflow,
    InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

// Every contract violation raised by the library. `witness` carries the
// offending object in a short human-readable form (a vertex, a pair of
// separation ids, a relator...).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string witness = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string &message() const noexcept { return message_; }
    const std::string &witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::string witness_;
};

} // namespace pblocks

#include "pblocks/error.hpp"

namespace pblocks {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NoSeparationExists: return "NoSeparationExists";
    case ErrorKind::HingeVertex: return "HingeVertex";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::string witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(std::move(message)),
      witness_(std::move(witness))
{
}

} // namespace pblocks

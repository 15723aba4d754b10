#include "homlab/errors.hpp"

namespace homlab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::LimitExceeded: return "LimitExceeded";
        case ErrorKind::NonSymmetric: return "NonSymmetric";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::IsolatedVertex: return "IsolatedVertex";
        case ErrorKind::NotTwoSpin: return "NotTwoSpin";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::UndecidedAtPrecisionCap: return "UndecidedAtPrecisionCap";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace homlab

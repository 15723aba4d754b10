#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homlab {

enum class ErrorKind {
    InvalidSpec,
    InvalidArgument,
    LimitExceeded,
    NonSymmetric,
    NegativeWeight,
    DimensionMismatch,
    IsolatedVertex,
    NotTwoSpin,
    PreconditionViolated,
    UndecidedAtPrecisionCap,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the scan loop in particular) can tell precondition problems apart
/// from operational ones.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace homlab

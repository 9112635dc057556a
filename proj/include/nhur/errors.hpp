#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhur {

enum class ErrorCode {
    DimensionMismatch,
    NonFinite,
    InvalidArgument,
    EpDegenerate,
    SingularFrame,
    ValidationFailed,
    NotNormalized,
    InternalInconsistency,
    ZeroVector,
    NegativeNorm,
    DegenerateEigenstate,
    NotOrthogonal,
    NotGoodObservable,
    PhaseMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI, the sweep driver) can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nhur

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlat {

enum class Errc {
    ZeroDenominator,
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    ZeroPolynomial,
    LengthMismatch,
    NotComparable,
    ProportionalForms,
    InvalidForm,
    InternalInconsistency,
    ParseError,
    PreconditionViolated,
    VerificationFailed,
    HypothesisViolated,
    NotArrangementPreserving,
    OffsetTooLarge,
    PointNotInComponent,
    NotUnimodal,
    NoCenterPairFound,
    BadReduction,
    Usage,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. The code identifies the contract that
/// was violated; what() carries the human-readable context.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace mlat

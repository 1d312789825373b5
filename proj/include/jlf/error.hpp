#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jlf {

enum class ErrorKind {
    NotSymmetric,
    OddDiagonal,
    NotPositiveDefinite,
    Degenerate,
    NotSquare,
    NotInDualLattice,
    NonIntegralArgument,
    NotFundamental,
    NotADiscriminant,
    NotIsotropic,
    NotInSupport,
    OutOfRange,
    ResourceLimit,
    StabilizationFailure,
    ConvergenceDomain,
    TailTooLarge,
    UnsupportedOrder,
    OddWeight,
    InvalidArgument,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::OddDiagonal: return "OddDiagonal";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotInDualLattice: return "NotInDualLattice";
    case ErrorKind::NonIntegralArgument: return "NonIntegralArgument";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::NotADiscriminant: return "NotADiscriminant";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::NotInSupport: return "NotInSupport";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::StabilizationFailure: return "StabilizationFailure";
    case ErrorKind::ConvergenceDomain: return "ConvergenceDomain";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::OddWeight: return "OddWeight";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Input rejected before any computation (CLI exit code 2).
constexpr bool is_validation_error(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::OutOfRange:
    case ErrorKind::ResourceLimit:
    case ErrorKind::StabilizationFailure:
    case ErrorKind::ConvergenceDomain:
    case ErrorKind::TailTooLarge:
        return false;
    default:
        return true;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace jlf

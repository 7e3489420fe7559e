#pragma once
#include <stdexcept>
#include <string>

namespace cmeis {

enum class ErrorCode {
    DivergentSpec,
    PoleAtLatticePoint,
    InvalidInput,
    NotCoprime,
    TruncationInsufficient,
    PathDisagreement,
    DescentFailure,
    PresetInvalid,
    PrecisionExhausted,
    AmbiguousDetection,
    ModulusTooLarge,
    UnsupportedWeight,
    RankDeficient,
    NonRationalCoefficient,
    DetectionFailed,
    SingularCurve,
    InvalidFrobeniusLift,
    NonUnitInput,
    ConvergenceRefused,
    UnknownSuite,
    PresetParseError,
};

inline const char* code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::DivergentSpec: return "DivergentSpec";
    case ErrorCode::PoleAtLatticePoint: return "PoleAtLatticePoint";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::PathDisagreement: return "PathDisagreement";
    case ErrorCode::DescentFailure: return "DescentFailure";
    case ErrorCode::PresetInvalid: return "PresetInvalid";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::AmbiguousDetection: return "AmbiguousDetection";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonRationalCoefficient: return "NonRationalCoefficient";
    case ErrorCode::DetectionFailed: return "DetectionFailed";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::InvalidFrobeniusLift: return "InvalidFrobeniusLift";
    case ErrorCode::NonUnitInput: return "NonUnitInput";
    case ErrorCode::ConvergenceRefused: return "ConvergenceRefused";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::PresetParseError: return "PresetParseError";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(code_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

} // namespace cmeis

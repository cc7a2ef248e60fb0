#pragma once

#include <stdexcept>
#include <string>

namespace wavetail {

// One exception type per contract violation the modules can report.
// The CLI maps these onto its exit-code contract.
enum class ErrKind {
    ExponentOutOfRange,
    BoundaryCase,
    WrongRegime,
    NotDtStructured,
    RegionMismatch,
    HypothesisFailed,
    GammaOutOfRange,
    NonConvergence,
    QuadratureNotConverged,
    InsufficientSampling,
    CflViolation,
    Blowup,
    OrderTooHigh,
    RegionOutsideHistory,
    InsufficientPoints,
    DegenerateFit,
    AxisMismatch,
    ParseError,
    ValidationError,
    IoError,
};

inline const char* err_name(ErrKind k) {
    switch (k) {
        case ErrKind::ExponentOutOfRange: return "ExponentOutOfRange";
        case ErrKind::BoundaryCase: return "BoundaryCase";
        case ErrKind::WrongRegime: return "WrongRegime";
        case ErrKind::NotDtStructured: return "NotDtStructured";
        case ErrKind::RegionMismatch: return "RegionMismatch";
        case ErrKind::HypothesisFailed: return "HypothesisFailed";
        case ErrKind::GammaOutOfRange: return "GammaOutOfRange";
        case ErrKind::NonConvergence: return "NonConvergence";
        case ErrKind::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrKind::InsufficientSampling: return "InsufficientSampling";
        case ErrKind::CflViolation: return "CflViolation";
        case ErrKind::Blowup: return "Blowup";
        case ErrKind::OrderTooHigh: return "OrderTooHigh";
        case ErrKind::RegionOutsideHistory: return "RegionOutsideHistory";
        case ErrKind::InsufficientPoints: return "InsufficientPoints";
        case ErrKind::DegenerateFit: return "DegenerateFit";
        case ErrKind::AxisMismatch: return "AxisMismatch";
        case ErrKind::ParseError: return "ParseError";
        case ErrKind::ValidationError: return "ValidationError";
        case ErrKind::IoError: return "IoError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

  private:
    ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace wavetail

#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

// Stable error taxonomy shared by the library and the CLI. Parse failures
// are reported separately (std::invalid_argument / CLI exit 1).
enum class ErrorCode {
    BasePoint,
    BasePointOfFibration,
    CollinearityViolation,
    OnConic,
    ConjugatePair,
    NetDegenerate,
    NonQiBasePoint,
    DeepTower,
    NeedsSpecialQuintic,
    NotInPencil,
    RealPencilValue,
    IsotropicVector,
    DegeneratePosition,
    DegenerateConstraints,
    ContractedCurve,
    SingularMatrix,
    NoWitness,
    UnfactorableFactor,
    ReducibleConic,
    InconsistentSystem,
};

const char* error_code_name(ErrorCode c);

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cremona

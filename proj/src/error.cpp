#include "cremona/error.hpp"

namespace cremona {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::BasePoint: return "BasePoint";
        case ErrorCode::BasePointOfFibration: return "BasePointOfFibration";
        case ErrorCode::CollinearityViolation: return "CollinearityViolation";
        case ErrorCode::OnConic: return "OnConic";
        case ErrorCode::ConjugatePair: return "ConjugatePair";
        case ErrorCode::NetDegenerate: return "NetDegenerate";
        case ErrorCode::NonQiBasePoint: return "NonQiBasePoint";
        case ErrorCode::DeepTower: return "DeepTower";
        case ErrorCode::NeedsSpecialQuintic: return "NeedsSpecialQuintic";
        case ErrorCode::NotInPencil: return "NotInPencil";
        case ErrorCode::RealPencilValue: return "RealPencilValue";
        case ErrorCode::IsotropicVector: return "IsotropicVector";
        case ErrorCode::DegeneratePosition: return "DegeneratePosition";
        case ErrorCode::DegenerateConstraints: return "DegenerateConstraints";
        case ErrorCode::ContractedCurve: return "ContractedCurve";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NoWitness: return "NoWitness";
        case ErrorCode::UnfactorableFactor: return "UnfactorableFactor";
        case ErrorCode::ReducibleConic: return "ReducibleConic";
        case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    }
    return "UnknownError";
}

}  // namespace cremona

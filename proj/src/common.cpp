#include "llt/common.hpp"

namespace llt {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidElement: return "InvalidElement";
        case ErrorCode::Duplicate: return "Duplicate";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::RootDeletion: return "RootDeletion";
        case ErrorCode::InvalidQuery: return "InvalidQuery";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::NonAdjacentMerge: return "NonAdjacentMerge";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::StructuralCorruption: return "StructuralCorruption";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

}  // namespace llt

#include "nxmds/error.hpp"

namespace nxmds {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::NoIrreducibleFound: return "NoIrreducibleFound";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::TooFewNodes: return "TooFewNodes";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::BadNodeId: return "BadNodeId";
        case ErrorCode::DataTooLarge: return "DataTooLarge";
        case ErrorCode::BadModel: return "BadModel";
        case ErrorCode::DegenerateError: return "DegenerateError";
        case ErrorCode::NoGroundTruth: return "NoGroundTruth";
        case ErrorCode::ExtensionTooSmall: return "ExtensionTooSmall";
        case ErrorCode::CommitmentViolation: return "CommitmentViolation";
        case ErrorCode::TooFewHelpers: return "TooFewHelpers";
        case ErrorCode::CorruptHelper: return "CorruptHelper";
        case ErrorCode::DegenerateCode: return "DegenerateCode";
        case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    }
    return "Unknown";
}

}  // namespace nxmds

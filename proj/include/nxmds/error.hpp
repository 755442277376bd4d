#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nxmds {

enum class ErrorCode {
    InvalidArgument,
    NonPrimeCharacteristic,
    NoIrreducibleFound,
    FieldMismatch,
    DivisionByZero,
    FieldTooSmall,
    ShapeMismatch,
    TooFewNodes,
    SingularSystem,
    BadNodeId,
    DataTooLarge,
    BadModel,
    DegenerateError,
    NoGroundTruth,
    ExtensionTooSmall,
    CommitmentViolation,
    TooFewHelpers,
    CorruptHelper,
    DegenerateCode,
    TooLargeToEnumerate,
    BadMagic,
    VersionMismatch,
    TruncatedPayload,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace nxmds

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iceinfer {

enum class ErrorCode {
  MissingColumn,
  NonNumericCell,
  UnknownArmCode,
  ArmTooSmall,
  EmptyFile,
  NonFiniteValue,
  DuplicateName,
  InvalidArgument,
  ZeroEffeVariance,
  InvalidMap,
  BadReplicationCount,
  OriginPoint,
  OriginObserved,
  WedgeDegenerate,
  OutsideBracket,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::UnknownArmCode: return "UnknownArmCode";
    case ErrorCode::ArmTooSmall: return "ArmTooSmall";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroEffeVariance: return "ZeroEffeVariance";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::BadReplicationCount: return "BadReplicationCount";
    case ErrorCode::OriginPoint: return "OriginPoint";
    case ErrorCode::OriginObserved: return "OriginObserved";
    case ErrorCode::WedgeDegenerate: return "WedgeDegenerate";
    case ErrorCode::OutsideBracket: return "OutsideBracket";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a stable code; data errors
/// tied to a CSV line also carry the 1-based data row.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(message), code_(code), row_(row) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace iceinfer

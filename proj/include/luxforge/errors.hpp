#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace luxforge {

enum class ErrorCode {
  // photometry
  MissingTilt,
  BadCount,
  NonAscendingAngles,
  NegativeCandela,
  UnsupportedPhotometricType,
  MalformedPhotometry,
  BadResolution,
  // lumen method
  NonPositiveDimension,
  GeometryContradiction,
  NonPositiveIndex,
  FluxDomain,
  DegenerateLuminaire,
  NonPositiveArea,
  BadCuTable,
  // point grid
  BadSpacing,
  EmptyGrid,
  // project model
  SchemaViolation,
  UnknownPhotometryRef,
  DuplicateRoomName,
  UnknownRoom,
  MissingGeometry,
  // circuits
  EmptyCircuit,
  OverAmpacity,
  BadDefaults,
  // io
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace luxforge

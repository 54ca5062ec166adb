#include "luxforge/errors.hpp"

namespace luxforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingTilt: return "MissingTilt";
    case ErrorCode::BadCount: return "BadCount";
    case ErrorCode::NonAscendingAngles: return "NonAscendingAngles";
    case ErrorCode::NegativeCandela: return "NegativeCandela";
    case ErrorCode::UnsupportedPhotometricType: return "UnsupportedPhotometricType";
    case ErrorCode::MalformedPhotometry: return "MalformedPhotometry";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::NonPositiveDimension: return "NonPositiveDimension";
    case ErrorCode::GeometryContradiction: return "GeometryContradiction";
    case ErrorCode::NonPositiveIndex: return "NonPositiveIndex";
    case ErrorCode::FluxDomain: return "FluxDomain";
    case ErrorCode::DegenerateLuminaire: return "DegenerateLuminaire";
    case ErrorCode::NonPositiveArea: return "NonPositiveArea";
    case ErrorCode::BadCuTable: return "BadCuTable";
    case ErrorCode::BadSpacing: return "BadSpacing";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnknownPhotometryRef: return "UnknownPhotometryRef";
    case ErrorCode::DuplicateRoomName: return "DuplicateRoomName";
    case ErrorCode::UnknownRoom: return "UnknownRoom";
    case ErrorCode::MissingGeometry: return "MissingGeometry";
    case ErrorCode::EmptyCircuit: return "EmptyCircuit";
    case ErrorCode::OverAmpacity: return "OverAmpacity";
    case ErrorCode::BadDefaults: return "BadDefaults";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace luxforge

#include "fqbias/errors.hpp"

namespace fqbias {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReduciblePoly: return "ReduciblePoly";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ConstantPoly: return "ConstantPoly";
    case ErrorCode::ZeroPoly: return "ZeroPoly";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::PrincipalCharacter: return "PrincipalCharacter";
    case ErrorCode::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::MissingZeroData: return "MissingZeroData";
    case ErrorCode::InfeasiblePartition: return "InfeasiblePartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InexactDivision: return "InexactDivision";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t offset, const std::string& what)
    : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

}  // namespace fqbias

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fqbias {

enum class ErrorCode {
  NotPrime,
  ReduciblePoly,
  DivisionByZero,
  ConstantPoly,
  ZeroPoly,
  NonMonic,
  NotSquarefree,
  ResourceLimit,
  EvenCharacteristic,
  PrincipalCharacter,
  ClassificationAmbiguous,
  NoMatch,
  MissingZeroData,
  InfeasiblePartition,
  ParseError,
  UnknownSymbol,
  InvalidArgument,
  FieldMismatch,
  InexactDivision,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the polynomial/field expression parser. offset is a byte index
// into the input string.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace fqbias

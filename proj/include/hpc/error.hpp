#pragma once

#include <stdexcept>
#include <string>

namespace hpc {

enum class ErrorKind {
  NotAGroup,
  DimensionMismatch,
  GradingMismatch,
  CodomainViolation,
  NotARightIdeal,
  NotInKernelOfCounit,
  NotCovariant,
  NotBicovariant,
  InternalMismatch,
  MissingCoaction,
  MissingPsi,
  StructureInconsistent,
  IncompatibleData,
  DimensionVariesAcrossGrading,
  ParseError,
  UnknownIdeal,
  TooLarge,
  Unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace hpc

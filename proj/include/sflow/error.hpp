#pragma once

#include <stdexcept>
#include <string>

namespace sflow {

enum class ErrorKind {
  // grouprep
  NonGroup,
  BadCharacterTable,
  NotInvariant,
  NonIntegralMultiplicity,
  TableMismatch,
  WrongGroup,
  ProjectionResidual,
  // operators
  OutOfRange,
  EigenFailure,
  InfiniteRank,
  BoundaryHit,
  NotInvertible,
  NotEquivariant,
  DimMismatch,
  EndpointMismatch,
  TailMismatch,
  // sflcore
  EndpointNotInvertible,
  CertificationFailed,
  // cogredient
  NotFSplus,
  NotPositive,
  CoverFailure,
  NotFSi,
  ResidualTooLarge,
  // maslov
  NotSymmetric,
  NotOrthonormal,
  ConsistencyFailure,
  // job documents
  ParseError,
  SchemaError,
  DimensionMismatch,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sflow

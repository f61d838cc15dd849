#include "sflow/error.hpp"

namespace sflow {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonGroup: return "NonGroup";
    case ErrorKind::BadCharacterTable: return "BadCharacterTable";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
    case ErrorKind::TableMismatch: return "TableMismatch";
    case ErrorKind::WrongGroup: return "WrongGroup";
    case ErrorKind::ProjectionResidual: return "ProjectionResidual";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::InfiniteRank: return "InfiniteRank";
    case ErrorKind::BoundaryHit: return "BoundaryHit";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::TailMismatch: return "TailMismatch";
    case ErrorKind::EndpointNotInvertible: return "EndpointNotInvertible";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::NotFSplus: return "NotFSplus";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::CoverFailure: return "CoverFailure";
    case ErrorKind::NotFSi: return "NotFSi";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

}  // namespace sflow

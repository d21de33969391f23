#include "reasoner/error.hpp"

namespace reasoner {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedPenman: return "MalformedPenman";
    case ErrorCode::DuplicateInstanceLabel: return "DuplicateInstanceLabel";
    case ErrorCode::DanglingCoreference: return "DanglingCoreference";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::AlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidMerge: return "InvalidMerge";
    case ErrorCode::NoEmbeddings: return "NoEmbeddings";
    case ErrorCode::UndefinedCollapsability: return "UndefinedCollapsability";
    case ErrorCode::UnnormalizedTree: return "UnnormalizedTree";
    case ErrorCode::VerdictUnmapped: return "VerdictUnmapped";
    case ErrorCode::MissingBody: return "MissingBody";
    case ErrorCode::NegationUnsupported: return "NegationUnsupported";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::MalformedLogic: return "MalformedLogic";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace reasoner

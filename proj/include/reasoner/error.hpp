#pragma once

#include <stdexcept>
#include <string>

namespace reasoner {

enum class ErrorCode {
  MalformedPenman,
  DuplicateInstanceLabel,
  DanglingCoreference,
  InvalidTree,
  InvalidDocument,
  AlignmentMismatch,
  DimensionMismatch,
  EmptyInput,
  InvalidMerge,
  NoEmbeddings,
  UndefinedCollapsability,
  UnnormalizedTree,
  VerdictUnmapped,
  MissingBody,
  NegationUnsupported,
  ArityMismatch,
  MalformedLogic,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reasoner

// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levels {

enum class ErrorCode {
  InvalidIdentifier,
  DuplicateElement,
  NotFound,
  OpaqueExpansion,
  AlreadyExpanded,
  InvalidStructure,
  InvalidProbability,
  UnnormalizedAlternatives,
  NotARelationship,
  NotAnOutcome,
  NonUnivocal,
  NoDenotation,
  NoOutcome,
  InvalidCounts,
  DegenerateProbability,
  InvalidArgument,
  ArithmeticOverflow,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::OpaqueExpansion: return "OpaqueExpansion";
    case ErrorCode::AlreadyExpanded: return "AlreadyExpanded";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::UnnormalizedAlternatives: return "UnnormalizedAlternatives";
    case ErrorCode::NotARelationship: return "NotARelationship";
    case ErrorCode::NotAnOutcome: return "NotAnOutcome";
    case ErrorCode::NonUnivocal: return "NonUnivocal";
    case ErrorCode::NoDenotation: return "NoDenotation";
    case ErrorCode::NoOutcome: return "NoOutcome";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::DegenerateProbability: return "DegenerateProbability";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
  }
  return "Unknown";
}

/// Domain error raised by every library operation. The code is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace levels

// voxanon/error.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace voxanon {

enum class ErrorKind {
  // audio_io
  NotWav,
  UnsupportedFormat,
  TruncatedFile,
  IoError,
  EmptySignal,
  PlanMismatch,
  InvalidArgument,
  // lpc_core
  OrderTooLarge,
  DegenerateFrame,
  UnstableFilter,
  NonConvergence,
  ConjugateViolation,
  // mcadams
  DomainError,
  // asv_scoring
  EmptyEnrollment,
  DimensionMismatch,
  ZeroNorm,
  MissingEnrollment,
  MissingTrialVector,
  DuplicateTrial,
  // metrics
  MissingClass,
  EmptyReference,
  MissingReferenceClass,
  WrongFoldCount,
  // manifest_io
  MissingFile,
  DuplicateUtterance,
  OrphanUtterance,
  MissingGender,
  MalformedLine,
};

std::string_view to_string(ErrorKind kind);

/// Coarse grouping used by the command-line front end to pick exit codes.
enum class ErrorCategory { Parse, Precondition, Io };

ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace voxanon

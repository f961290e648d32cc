// voxanon/error.cpp

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

#include "voxanon/error.hpp"

namespace voxanon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotWav: return "NotWav";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::TruncatedFile: return "TruncatedFile";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::EmptySignal: return "EmptySignal";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::UnstableFilter: return "UnstableFilter";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ConjugateViolation: return "ConjugateViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EmptyEnrollment: return "EmptyEnrollment";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::MissingEnrollment: return "MissingEnrollment";
    case ErrorKind::MissingTrialVector: return "MissingTrialVector";
    case ErrorKind::DuplicateTrial: return "DuplicateTrial";
    case ErrorKind::MissingClass: return "MissingClass";
    case ErrorKind::EmptyReference: return "EmptyReference";
    case ErrorKind::MissingReferenceClass: return "MissingReferenceClass";
    case ErrorKind::WrongFoldCount: return "WrongFoldCount";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::DuplicateUtterance: return "DuplicateUtterance";
    case ErrorKind::OrphanUtterance: return "OrphanUtterance";
    case ErrorKind::MissingGender: return "MissingGender";
    case ErrorKind::MalformedLine: return "MalformedLine";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError:
    case ErrorKind::MissingFile:
      return ErrorCategory::Io;
    case ErrorKind::NotWav:
    case ErrorKind::UnsupportedFormat:
    case ErrorKind::TruncatedFile:
    case ErrorKind::MalformedLine:
    case ErrorKind::DuplicateUtterance:
    case ErrorKind::OrphanUtterance:
    case ErrorKind::MissingGender:
    case ErrorKind::DuplicateTrial:
      return ErrorCategory::Parse;
    default:
      return ErrorCategory::Precondition;
  }
}

}  // namespace voxanon

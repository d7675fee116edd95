// src/error.cc

// Copyright 2026  ttslabel authors

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

#include "ttslabel/error.h"

namespace ttslabel {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kGrammarViolation: return "GrammarViolation";
    case ErrorCode::kDuplicateToken: return "DuplicateToken";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kMissingEos: return "MissingEOS";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kRaggedInputs: return "RaggedInputs";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kSequenceTooLong: return "SequenceTooLong";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kInvalidRate: return "InvalidRate";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kFormat: return "Format";
  }
  return "Unknown";
}

}  // namespace ttslabel

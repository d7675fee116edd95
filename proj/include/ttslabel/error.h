// include/ttslabel/error.h

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

#ifndef TTSLABEL_ERROR_H_
#define TTSLABEL_ERROR_H_

#include <stdexcept>
#include <string>

namespace ttslabel {

// Typed failure kinds surfaced by the library. The CLI maps each one to a
// distinct process exit code.
enum class ErrorCode {
  kUnknownToken = 1,
  kGrammarViolation,
  kDuplicateToken,
  kEmptySequence,
  kMissingEos,
  kUnknownId,
  kEmptyReference,
  kLengthMismatch,
  kRaggedInputs,
  kInvalidConfig,
  kSequenceTooLong,
  kEmptyDataset,
  kInvalidRate,
  kInsufficientData,
  kDimMismatch,
  kIo,
  kFormat,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ttslabel

#endif  // TTSLABEL_ERROR_H_

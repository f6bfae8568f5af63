/*
 * Copyright (c) 2026, The ctsf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CTSF_ERROR_HH_
#define CTSF_ERROR_HH_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctsf {

enum class ErrorCode {
  kUnboundFunction,
  kTypeMismatch,
  kPatternMismatch,
  kUndefinedConstant,
  kNonTermination,
  kNotFullyEvaluated,
  kNotReachableShape,
  kTiAlreadySet,
  kInvalidRepresentative,
  kInvariantViolation,
  kEmptyKnowledge,
  kBoundExceeded,
  kGraphTruncated,
  kStepNotEnabled,
  kOpenInput,
  kConfig,
};

std::string_view to_string(ErrorCode code);

/// All failures raised by the engine carry one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ctsf

#endif  // CTSF_ERROR_HH_

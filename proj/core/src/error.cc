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

#include "ctsf/error.hh"

namespace ctsf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnboundFunction: return "UnboundFunction";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kPatternMismatch: return "PatternMismatch";
    case ErrorCode::kUndefinedConstant: return "UndefinedConstant";
    case ErrorCode::kNonTermination: return "NonTermination";
    case ErrorCode::kNotFullyEvaluated: return "NotFullyEvaluated";
    case ErrorCode::kNotReachableShape: return "NotReachableShape";
    case ErrorCode::kTiAlreadySet: return "TiAlreadySet";
    case ErrorCode::kInvalidRepresentative: return "InvalidRepresentative";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kEmptyKnowledge: return "EmptyKnowledge";
    case ErrorCode::kBoundExceeded: return "BoundExceeded";
    case ErrorCode::kGraphTruncated: return "GraphTruncated";
    case ErrorCode::kStepNotEnabled: return "StepNotEnabled";
    case ErrorCode::kOpenInput: return "OpenInput";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

}  // namespace ctsf

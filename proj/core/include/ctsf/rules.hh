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

#ifndef CTSF_RULES_HH_
#define CTSF_RULES_HH_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ctsf {

/// Names of the transition rules of both semantics.
enum class Rule : std::uint8_t {
  // Calculus rules.
  kComA,
  kComB,
  kComC,
  kSusp,
  kPSusp,
  kStop,
  kSnd,
  kTau,
  // Representative rules.
  kSR1,
  kSR2,
  kSR3,
  kSR4,
  kSR5,
  kSR6,
  kSR1p,
  kSR2p,
  kSR4p,
  kSR5p,
  kSRW1,
  kSRW2,
  kSR7,
  kOK,
};

std::string_view rule_name(Rule rule);
bool is_calculus_rule(Rule rule);

/**
 * A rule instance. The meaning of the three parameters depends on the
 * rule: (q, p, r) for phase-1 rules, (q, p) for phase-2 rules, the wrapper
 * index for SRW1/SRW2, the crashing agent for SR7 and Stop, the channel
 * subscripts for Com, and (location, suspect) for Susp.
 */
struct RuleLabel {
  Rule rule = Rule::kTau;
  std::uint8_t a = 0, b = 0, c = 0;

  /// Instance id such as `SR1(q=2,p=1,r=1)` or `Com(a[1,2,1])`.
  std::string to_string() const;
  /// Inverse of to_string.
  static std::optional<RuleLabel> parse(std::string_view id);

  auto operator<=>(const RuleLabel&) const = default;
};

}  // namespace ctsf

#endif  // CTSF_RULES_HH_

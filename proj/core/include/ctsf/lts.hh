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

#ifndef CTSF_LTS_HH_
#define CTSF_LTS_HH_

#include <compare>
#include <string>
#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/representative.hh"
#include "ctsf/rules.hh"
#include "ctsf/syntax.hh"

namespace ctsf {

enum class ActionKind : std::uint8_t { kTau, kSend, kRecv };

struct Action {
  ActionKind kind = ActionKind::kTau;
  ChannelId channel;
  Value value;

  static Action tau() { return {}; }
  static Action send(ChannelId c, Value v) { return {ActionKind::kSend, c, std::move(v)}; }
  bool is_tau() const { return kind == ActionKind::kTau; }
  /// `tau`, `'ok<_>` or `c[1](4)`.
  std::string to_string() const;

  auto operator<=>(const Action&) const = default;
  bool operator==(const Action&) const = default;
};

/// One transition of a configuration.
struct ConfigTransition {
  Action action;
  RuleLabel label;
  Configuration target;
};

/// One transition between representatives.
struct Transition {
  Action action;
  RuleLabel label;
  Representative target;
};

/// One successor per live agent, each with that agent as trusted
/// immortal. Throws Error(kTiAlreadySet).
std::vector<Configuration> select_ti(const Configuration& c);

/**
 * All transitions of `c` (evaluated first) under the SOS rules: Com on
 * restricted channels, Susp, PSusp and Tau guards (also inside sums), Snd
 * on free channels and Stop. Restricted actions never escape. Targets are
 * evaluated unless `evaluate_targets` is false.
 *
 * Throws Error(kOpenInput) for an input on a free channel, since the
 * system has no environment to receive from.
 */
std::vector<ConfigTransition> config_transitions(const Configuration& c, const Model& model,
                                                 bool evaluate_targets = true);

/// Transitions of sfi(r) re-extracted with sf: the calculus side of the
/// correspondence.
std::vector<Transition> calculus_successors(const Representative& r, const Model& model);

/// rep_successors as tau steps, plus the observable ok once the wrapper
/// has decided.
std::vector<Transition> representative_successors(const Representative& r, const Model& model);

/// The trusted-immortal-resolved initial representatives, one per agent.
std::vector<Representative> initial_representatives(const Model& model);

}  // namespace ctsf

#endif  // CTSF_LTS_HH_

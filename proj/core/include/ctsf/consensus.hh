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

#ifndef CTSF_CONSENSUS_HH_
#define CTSF_CONSENSUS_HH_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctsf/evaluation.hh"
#include "ctsf/syntax.hh"
#include "ctsf/value.hh"

namespace ctsf {

/// n agents proposing `values`, of which at most `budget` may crash.
struct ProblemInstance {
  int n = 1;
  std::vector<std::uint64_t> values;
  int budget = 0;

  /// Validates the instance; budget defaults to n - 1.
  /// Throws Error(kConfig) on an empty or non-positive value list, or a
  /// budget outside 0..n-1.
  static ProblemInstance make(std::vector<std::uint64_t> values,
                              std::optional<int> budget = std::nullopt);

  Value proposal(int agent) const { return Value::nat(values.at(agent - 1)); }
  bool proposed(const Value& v) const;
};

/// Deliberate defects for negative testing of the verifier.
struct Mutations {
  bool no_ti_protection = false;  // suspicion may target the trusted immortal
  bool skip_correct = false;      // phase 3 decides on the uncorrected vector
  bool sr1_drops_in1 = false;     // representative rule SR1 loses its collector
  bool disable_sr4 = false;       // representative phase-1 suspicion disabled

  /// Comma-separated list of the names listed by `names()`.
  /// Throws Error(kConfig) for an unknown name.
  static Mutations parse(const std::string& list);
  static std::vector<std::string> names();
  std::string to_string() const;
  bool any() const { return no_ti_protection || skip_correct || sr1_drops_in1 || disable_sr4; }
};

// Knowledge vectors are sets of (q, (value, round)); relay vectors are
// sets of (q, value). Both hold exactly one entry per agent 1..n.

Value know_vector(const std::vector<Value>& values, const std::vector<std::uint64_t>& rounds);
Value relay_vector(const std::vector<Value>& values);
/// Slot q of a knowledge or relay vector (the value component only).
Value slot_value(const Value& vector, int q);
/// Round stamp of slot q of a knowledge vector.
std::uint64_t slot_round(const Value& know, int q);
int vector_size(const Value& vector);

// Collected messages. A phase-1 entry is (delta, (round, sender)); a
// phase-2 entry is (vector, sender). Suspicion stores bottom for the
// vector.
Value phase1_entry(const Value& delta, int round, int sender);
Value phase2_entry(const Value& vector, int sender);
bool is_phase1_entry(const Value& entry);

Value updatek(std::uint64_t r, const Value& msgs, const Value& know);
Value updater(std::uint64_t r, const Value& msgs, const Value& know);
Value correct_fn(const Value& msgs, const Value& know);
/// Value at the smallest known slot. Throws Error(kEmptyKnowledge).
Value getfst(const Value& know);

/// Standard built-ins plus the consensus helpers above.
FunctionTable consensus_functions();
/// P1_p, C1_p, P2_p, C2_p, P3_p for p in 1..n, and WRAP.
EquationSet consensus_equations(int n, const Mutations& mutations = {});

/// Every internal channel for n agents; ok stays free.
std::vector<ChannelId> restriction_set(int n);

std::string phase1_name(int p);
std::string collect1_name(int p);
std::string phase2_name(int p);
std::string collect2_name(int p);
std::string phase3_name(int p);
inline constexpr const char* kWrapper = "WRAP";

/// Everything needed to run one instance under either semantics.
struct Model {
  ProblemInstance instance;
  Mutations mutations;
  Program program;
  std::vector<ChannelId> restricted;

  int n() const { return instance.n; }
  bool is_restricted(const ChannelId& c) const;
};

Model make_model(const ProblemInstance& instance, const Mutations& mutations = {});

Value initial_knowledge(const ProblemInstance& instance, int p);
Value initial_relay(const ProblemInstance& instance, int p);

/// The system before the trusted immortal is chosen: every agent at the
/// start of phase 1 and the wrapper waiting for agent 1.
Configuration make_initial(const ProblemInstance& instance);

}  // namespace ctsf

#endif  // CTSF_CONSENSUS_HH_

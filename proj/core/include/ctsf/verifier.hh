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

#ifndef CTSF_VERIFIER_HH_
#define CTSF_VERIFIER_HH_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/graph.hh"

namespace ctsf {

/// One step of a counterexample trace.
struct TraceStep {
  std::string rule;    // rule instance id, empty for the first state
  std::string action;  // empty for the first state
  std::string state;   // digest of the state reached
};

struct Failure {
  std::string message;
  std::vector<TraceStep> trace;  // from an initial state to the offending one
};

/// Outcome of one named check. Only the first few failures are kept.
struct CheckResult {
  explicit CheckResult(std::string check = {}) : name(std::move(check)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::vector<Failure> failures;
  /// Set when the underlying exploration hit its bound.
  bool truncated = false;

  bool passed() const { return failure_count == 0; }
  void fail(Failure f);
  static constexpr std::size_t kKeptFailures = 8;
};

struct CorrespondenceReport {
  std::size_t checked = 0;
  /// Representative steps with no matching calculus step.
  std::vector<Failure> sound_failures;
  /// Calculus steps (or calculus errors) with no matching representative step.
  std::vector<Failure> complete_failures;
  bool truncated = false;
  /// The representative-mode graph explored along the way.
  LtsGraph graph;

  bool passed() const { return sound_failures.empty() && complete_failures.empty(); }
};

/**
 * Explores the representative semantics and, at every reached state,
 * compares its successors as a set of (action, target) pairs with those
 * derived in the calculus through sfi and sf.
 */
CorrespondenceReport check_correspondence(const Model& model, const ExploreOptions& options = {});

struct ConfluenceOptions {
  /// Bound on the configurations of one evaluation graph.
  std::size_t max_configurations = 200'000;
};

/**
 * Every configuration met before evaluation (the initial ones and the raw
 * targets of transitions out of `graph`) is explored under single
 * evaluation steps. Every configuration in that graph must evaluate to the
 * same result, every fixed point must equal it, and the result must admit
 * no further step.
 */
CheckResult check_confluence(const LtsGraph& graph, const Model& model,
                             const ConfluenceOptions& options = {});

/// sf(sfi(R)) = R for every node of a representative graph.
CheckResult check_roundtrip(const LtsGraph& graph, const Model& model);

/// sf succeeds on every raw transition target and sfi(sf(C)) is congruent
/// to C.
CheckResult check_normal_forms(const LtsGraph& graph, const Model& model);

/**
 * congruent() on `samples` states (fewer if the graph is smaller), each
 * rearranged several ways: parallel components commuted and re-associated,
 * nil inserted, restrictions pushed inward, components at one location
 * merged. Checks that congruent() is an equivalence on the rearrangements
 * and that distinct states stay apart. Deterministic.
 */
CheckResult check_congruence(const LtsGraph& graph, const Model& model, std::size_t samples = 1000);

/// The consensus properties plus the trace invariants over a fully
/// explored representative graph. Throws Error(kGraphTruncated).
std::vector<CheckResult> check_properties(const LtsGraph& graph, const Model& model);

/// Counterexample trace along the exploration tree to node `n`.
std::vector<TraceStep> trace_to(const LtsGraph& g, NodeId n);

}  // namespace ctsf

#endif  // CTSF_VERIFIER_HH_

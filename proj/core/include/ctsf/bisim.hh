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

#ifndef CTSF_BISIM_HH_
#define CTSF_BISIM_HH_

#include <cstdint>
#include <string>
#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/graph.hh"
#include "ctsf/verifier.hh"

namespace ctsf {

struct BisimResult {
  bool bisimilar = false;
  /// Class of every node of the first and the second graph. Nodes with
  /// equal class ids are weakly bisimilar; together these give the relation.
  std::vector<std::uint32_t> left_class, right_class;
  std::uint32_t class_count = 0;
  /// On failure: a path in the first graph to the shallowest state that
  /// no state of the second graph is bisimilar to.
  std::vector<TraceStep> counterexample;
  std::string reason;
};

/**
 * Weak bisimilarity of the initial states of two finite graphs. Tau
 * cycles are collapsed first; classes are then refined by the weak
 * signature {(a, class) : s =a=> t} until stable. Actions are matched by
 * their rendering. The graphs are bisimilar when every initial state of
 * both lies in one class. Throws Error(kGraphTruncated).
 */
BisimResult weak_bisim(const LtsGraph& left, const LtsGraph& right);

/// The one-component system that emits ok once: the wrapper after a
/// decision, with every agent live and nothing left to crash.
Configuration ok_specification(const Model& model);

/// Explores ok_specification(model) under the calculus rules.
LtsGraph specification_graph(const Model& model);

}  // namespace ctsf

#endif  // CTSF_BISIM_HH_

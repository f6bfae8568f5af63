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

#ifndef CTSF_GRAPH_HH_
#define CTSF_GRAPH_HH_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/lts.hh"
#include "ctsf/rules.hh"

namespace ctsf {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t action = 0;  // index into the action table
  RuleLabel label;
};

/**
 * An explored transition system. Nodes are identified by opaque keys
 * (binary representatives or rendered configurations); actions are
 * interned, with tau always at index 0.
 */
class LtsGraph {
 public:
  LtsGraph();
  LtsGraph(LtsGraph&&) noexcept;
  LtsGraph& operator=(LtsGraph&&) noexcept;
  LtsGraph(const LtsGraph&) = delete;
  LtsGraph& operator=(const LtsGraph&) = delete;

  std::size_t size() const { return keys_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& key(NodeId n) const { return keys_[n]; }
  std::optional<NodeId> find(std::string_view key) const;
  /// Returns the node and whether it was new.
  std::pair<NodeId, bool> add_node(std::string key, std::optional<NodeId> parent);

  std::uint32_t intern(const Action& a);
  const Action& action(std::uint32_t id) const { return actions_[id]; }
  std::size_t action_count() const { return actions_.size(); }
  static constexpr std::uint32_t kTau = 0;

  /// Edges must be added grouped by source in node order.
  void add_edge(const Edge& e);
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Edge> out_edges(NodeId n) const;

  std::vector<NodeId> initials;
  bool truncated = false;
  /// Nodes whose successors could not be computed, with the reason.
  std::map<NodeId, std::string> errors;

  /// BFS tree path from an initial node to `n`, inclusive.
  std::vector<NodeId> path_to(NodeId n) const;
  /// The edge the BFS tree used to reach `n`, if any.
  const Edge* tree_edge(NodeId n) const;

 private:
  std::deque<std::string> keys_;
  std::unordered_map<std::string_view, NodeId> index_;
  std::vector<std::optional<NodeId>> parent_;
  std::vector<Action> actions_;
  std::map<std::string, std::uint32_t> action_index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> first_edge_;  // per node, into edges_
};

struct KeyedSuccessor {
  Action action;
  RuleLabel label;
  std::string target;
};

using SuccessorFn = std::function<std::vector<KeyedSuccessor>(const std::string& key)>;

struct ExploreOptions {
  std::size_t max_states = 5'000'000;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
  /// Model-level exploration starts only from this trusted immortal.
  std::optional<int> ti;
};

/**
 * Breadth-first exploration from `initials`. Successor functions run in
 * parallel on batches of the frontier; results merge in node order, so
 * the graph is deterministic. Errors thrown by `successors` are recorded
 * per node. Stops adding nodes at `max_states` and sets `truncated`.
 */
LtsGraph explore_keys(const std::vector<std::string>& initials, const SuccessorFn& successors,
                      const ExploreOptions& options);

enum class Mode { kCalculus, kRepresentative };

std::string_view to_string(Mode m);

/// The reachable representative graph under either semantics, from all
/// trusted-immortal choices.
LtsGraph explore(const Model& model, Mode mode, const ExploreOptions& options = {});

/// The reachable graph of an arbitrary configuration, keyed by its
/// rendering with parallel components sorted.
LtsGraph explore_configuration(const Configuration& c, const Model& model,
                               const ExploreOptions& options = {});

/// Parallel components in sorted order under one restriction group.
std::string configuration_key(const Configuration& c);

/// Nodes reachable from `s` by zero or more tau edges.
std::vector<NodeId> weak_reach(const LtsGraph& g, NodeId s);

}  // namespace ctsf

#endif  // CTSF_GRAPH_HH_

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

#include "ctsf/graph.hh"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/representative.hh"

namespace ctsf {

LtsGraph::LtsGraph() { intern(Action::tau()); }
LtsGraph::LtsGraph(LtsGraph&&) noexcept = default;
LtsGraph& LtsGraph::operator=(LtsGraph&&) noexcept = default;

std::optional<NodeId> LtsGraph::find(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<NodeId, bool> LtsGraph::add_node(std::string key, std::optional<NodeId> parent) {
  if (auto it = index_.find(key); it != index_.end()) return {it->second, false};
  auto id = static_cast<NodeId>(keys_.size());
  keys_.push_back(std::move(key));
  index_.emplace(keys_.back(), id);
  parent_.push_back(parent);
  return {id, true};
}

std::uint32_t LtsGraph::intern(const Action& a) {
  auto name = a.to_string();
  auto it = action_index_.find(name);
  if (it != action_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(actions_.size());
  actions_.push_back(a);
  action_index_.emplace(std::move(name), id);
  return id;
}

void LtsGraph::add_edge(const Edge& e) {
  if (first_edge_.size() > e.src + 1) {
    throw Error(ErrorCode::kInvariantViolation, "edges added out of source order");
  }
  while (first_edge_.size() <= e.src) first_edge_.push_back(edges_.size());
  edges_.push_back(e);
}

std::span<const Edge> LtsGraph::out_edges(NodeId n) const {
  std::size_t begin = n < first_edge_.size() ? first_edge_[n] : edges_.size();
  std::size_t end = n + 1 < first_edge_.size() ? first_edge_[n + 1] : edges_.size();
  if (n >= first_edge_.size()) end = begin;
  return std::span<const Edge>(edges_).subspan(begin, end - begin);
}

std::vector<NodeId> LtsGraph::path_to(NodeId n) const {
  std::vector<NodeId> path{n};
  while (parent_[path.back()]) path.push_back(*parent_[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

const Edge* LtsGraph::tree_edge(NodeId n) const {
  if (!parent_[n]) return nullptr;
  for (const auto& e : out_edges(*parent_[n])) {
    if (e.dst == n) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

namespace {

struct Expansion {
  std::vector<KeyedSuccessor> successors;
  std::optional<std::string> error;
};

Expansion expand(const SuccessorFn& fn, const std::string& key) {
  Expansion x;
  try {
    x.successors = fn(key);
  } catch (const Error& e) {
    x.error = e.what();
  }
  return x;
}

}  // namespace

LtsGraph explore_keys(const std::vector<std::string>& initials, const SuccessorFn& successors,
                      const ExploreOptions& options) {
  LtsGraph g;
  for (const auto& k : initials) {
    if (g.size() >= options.max_states) {
      g.truncated = true;
      break;
    }
    auto [id, fresh] = g.add_node(k, std::nullopt);
    if (fresh) g.initials.push_back(id);
  }
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  const std::size_t batch = 1024 * threads;

  NodeId next = 0;
  std::vector<Expansion> results;
  while (next < g.size()) {
    const NodeId begin = next;
    const NodeId end = static_cast<NodeId>(std::min<std::size_t>(g.size(), begin + batch));
    results.assign(end - begin, {});
    if (threads == 1 || end - begin < 64) {
      for (NodeId k = begin; k < end; ++k) results[k - begin] = expand(successors, g.key(k));
    } else {
      std::atomic<NodeId> cursor{begin};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (NodeId k = cursor++; k < end; k = cursor++) {
            results[k - begin] = expand(successors, g.key(k));
          }
        });
      }
      for (auto& t : pool) t.join();
    }
    for (NodeId k = begin; k < end; ++k) {
      auto& x = results[k - begin];
      if (x.error) g.errors[k] = *x.error;
      for (auto& s : x.successors) {
        NodeId dst;
        if (auto found = g.find(s.target)) {
          dst = *found;
        } else if (g.size() >= options.max_states) {
          g.truncated = true;
          continue;
        } else {
          dst = g.add_node(std::move(s.target), k).first;
        }
        g.add_edge(Edge{k, dst, g.intern(s.action), s.label});
      }
    }
    next = end;
  }
  return g;
}

std::string_view to_string(Mode m) {
  return m == Mode::kCalculus ? "calculus" : "representative";
}

LtsGraph explore(const Model& model, Mode mode, const ExploreOptions& options) {
  std::vector<std::string> initials;
  for (const auto& r : initial_representatives(model)) {
    if (!options.ti || r.ti == *options.ti) initials.push_back(encode(r));
  }
  SuccessorFn fn = [&model, mode](const std::string& key) {
    Representative r = decode(key);
    auto ts = mode == Mode::kCalculus ? calculus_successors(r, model)
                                      : representative_successors(r, model);
    std::vector<KeyedSuccessor> out;
    out.reserve(ts.size());
    for (auto& t : ts) out.push_back({std::move(t.action), t.label, encode(t.target)});
    return out;
  };
  return explore_keys(initials, fn, options);
}

std::string configuration_key(const Configuration& c) {
  FlatNetwork flat = flatten(c.net);
  std::sort(flat.components.begin(), flat.components.end(),
            [](const Component& a, const Component& b) {
              if (a.location != b.location) return a.location < b.location;
              return a.process < b.process;
            });
  Configuration k{c.gamma, c.ti, build(flat)};
  return k.to_string();
}

LtsGraph explore_configuration(const Configuration& c, const Model& model,
                               const ExploreOptions& options) {
  // Keys are renderings, which do not parse back; keep the terms aside.
  std::unordered_map<std::string, Configuration> terms;
  Configuration start = evaluate(c, model.program);
  std::string start_key = configuration_key(start);
  terms.emplace(start_key, start);
  SuccessorFn fn = [&](const std::string& key) {
    std::vector<KeyedSuccessor> out;
    for (auto& t : config_transitions(terms.at(key), model)) {
      std::string k = configuration_key(t.target);
      terms.emplace(k, t.target);
      out.push_back({std::move(t.action), t.label, std::move(k)});
    }
    return out;
  };
  ExploreOptions serial = options;
  serial.threads = 1;
  return explore_keys({start_key}, fn, serial);
}

std::vector<NodeId> weak_reach(const LtsGraph& g, NodeId s) {
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeId> out{s};
  seen[s] = 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& e : g.out_edges(out[k])) {
      if (e.action == LtsGraph::kTau && !seen[e.dst]) {
        seen[e.dst] = 1;
        out.push_back(e.dst);
      }
    }
  }
  return out;
}

}  // namespace ctsf
